#ifndef DUALROOTS_BIPOLY_HPP
#define DUALROOTS_BIPOLY_HPP

#include "unipoly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualroots {

/**
 * Sparse exact polynomial in (x, z).
 *
 * Terms are keyed by (x-power, z-power); zero coefficients are never stored,
 * so the zero polynomial is the empty map.
 */
class BiPoly {
public:
    using Exponent = std::pair<int, int>;
    using TermMap = std::map<Exponent, Rational>;

    BiPoly() = default;

    static BiPoly constant(const Rational& c)
    {
        BiPoly p;
        p.add_term(0, 0, c);
        return p;
    }

    static BiPoly term(const Rational& c, int x_power, int z_power)
    {
        BiPoly p;
        p.add_term(x_power, z_power, c);
        return p;
    }

    static BiPoly x() { return term(1, 1, 0); }
    static BiPoly z() { return term(1, 0, 1); }

    /// Embeds a univariate polynomial in its own variable.
    static BiPoly from(const UniPoly& u)
    {
        BiPoly p;
        for (int i = 0; i <= u.degree(); ++i) {
            if (u.var() == Var::X)
                p.add_term(i, 0, u.coefficient(i));
            else
                p.add_term(0, i, u.coefficient(i));
        }
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(int x_power, int z_power) const
    {
        auto it = terms_.find({x_power, z_power});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// -1 for the zero polynomial.
    int degree(Var v) const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, v == Var::X ? e.first : e.second);
        return d;
    }

    int x_degree() const { return degree(Var::X); }
    int z_degree() const { return degree(Var::Z); }

    void add_term(int x_power, int z_power, const Rational& c)
    {
        if (x_power < 0 || z_power < 0)
            throw std::invalid_argument("negative exponent");
        if (sgn(c) == 0)
            return;
        auto [it, inserted] = terms_.try_emplace({x_power, z_power}, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                terms_.erase(it);
        }
    }

    Rational operator()(const Rational& xv, const Rational& zv) const
    {
        return specialize(Var::X, xv)(zv);
    }

    /// Evaluation in another arithmetic; powers are accumulated per variable.
    template <class T, class Convert>
    T evaluate(const T& xv, const T& zv, Convert&& convert) const
    {
        const int dx = std::max(0, x_degree());
        const int dz = std::max(0, z_degree());
        std::vector<T> xp(static_cast<std::size_t>(dx) + 1, T(1));
        std::vector<T> zp(static_cast<std::size_t>(dz) + 1, T(1));
        for (int i = 1; i <= dx; ++i)
            xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * xv;
        for (int i = 1; i <= dz; ++i)
            zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i - 1)] * zv;
        T acc(0);
        for (const auto& [e, c] : terms_)
            acc += convert(c) * xp[static_cast<std::size_t>(e.first)] * zp[static_cast<std::size_t>(e.second)];
        return acc;
    }

    /// k-th formal partial derivative; zero when k exceeds the degree in v.
    BiPoly differentiate(Var v, int k = 1) const
    {
        if (k < 0)
            throw std::invalid_argument("negative derivative order");
        BiPoly out;
        for (const auto& [e, c] : terms_) {
            const int p = v == Var::X ? e.first : e.second;
            if (p < k)
                continue;
            Integer f = 1;
            for (int j = p - k + 1; j <= p; ++j)
                f *= static_cast<unsigned long>(j);
            if (v == Var::X)
                out.add_term(e.first - k, e.second, c * Rational(f));
            else
                out.add_term(e.first, e.second - k, c * Rational(f));
        }
        return out;
    }

    BiPoly differentiate(char tag, int k = 1) const { return differentiate(parse_var(tag), k); }

    /// Substitutes v = value; the result is a polynomial in the other variable.
    UniPoly specialize(Var v, const Rational& value) const
    {
        const Var rest = other(v);
        const int d = std::max(0, degree(rest));
        std::vector<Rational> co(static_cast<std::size_t>(d) + 1, Rational(0));
        // Powers of value up to the degree in v, computed once.
        const int dv = std::max(0, degree(v));
        std::vector<Rational> pw(static_cast<std::size_t>(dv) + 1, Rational(1));
        for (int i = 1; i <= dv; ++i)
            pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * value;
        for (const auto& [e, c] : terms_) {
            const int pv = v == Var::X ? e.first : e.second;
            const int pr = v == Var::X ? e.second : e.first;
            co[static_cast<std::size_t>(pr)] += c * pw[static_cast<std::size_t>(pv)];
        }
        return UniPoly(std::move(co), rest);
    }

    /// Coefficient of v^power, as a polynomial in the other variable.
    UniPoly slice(Var v, int power) const
    {
        const Var rest = other(v);
        std::vector<Rational> co(static_cast<std::size_t>(std::max(0, degree(rest))) + 1, Rational(0));
        for (const auto& [e, c] : terms_) {
            const int pv = v == Var::X ? e.first : e.second;
            const int pr = v == Var::X ? e.second : e.first;
            if (pv == power)
                co[static_cast<std::size_t>(pr)] = c;
        }
        return UniPoly(std::move(co), rest);
    }

    /// P(x, z + c).
    BiPoly shift_z(const Rational& c) const
    {
        BiPoly out;
        for (int i = 0; i <= x_degree(); ++i) {
            const UniPoly shifted = slice(Var::X, i).shifted(c);
            for (int j = 0; j <= shifted.degree(); ++j)
                out.add_term(i, j, shifted.coefficient(j));
        }
        return out;
    }

    /// P(-x, z).
    BiPoly reflect_x() const
    {
        BiPoly out;
        for (const auto& [e, c] : terms_)
            out.add_term(e.first, e.second, e.first % 2 == 0 ? c : Rational(-c));
        return out;
    }

    /// Division by a polynomial in z alone: P = Q*d + R with deg_z R < deg d.
    std::pair<BiPoly, BiPoly> divmod_z(const UniPoly& d) const
    {
        if (!d.is_constant() && d.var() != Var::Z)
            throw std::invalid_argument("divisor must be a polynomial in z");
        const UniPoly dz = d.with_var(Var::Z);
        BiPoly q, r;
        for (int i = 0; i <= x_degree(); ++i) {
            const UniPoly s = slice(Var::X, i);
            if (s.is_zero())
                continue;
            auto [qs, rs] = UniPoly::divmod(s, dz);
            for (int j = 0; j <= qs.degree(); ++j)
                q.add_term(i, j, qs.coefficient(j));
            for (int j = 0; j <= rs.degree(); ++j)
                r.add_term(i, j, rs.coefficient(j));
        }
        return {q, r};
    }

    /// Set of x-power parities present: bit 0 for even, bit 1 for odd.
    unsigned x_parities() const
    {
        unsigned bits = 0;
        for (const auto& [e, c] : terms_)
            bits |= 1u << (e.first % 2);
        return bits;
    }

    BiPoly operator-() const
    {
        BiPoly out = *this;
        for (auto& [e, c] : out.terms_)
            c = -c;
        return out;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b)
    {
        BiPoly out = a;
        for (const auto& [e, c] : b.terms_)
            out.add_term(e.first, e.second, c);
        return out;
    }

    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b)
    {
        BiPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return out;
    }

    friend BiPoly operator*(const BiPoly& a, const Rational& s)
    {
        if (sgn(s) == 0)
            return {};
        BiPoly out = a;
        for (auto& [e, c] : out.terms_)
            c *= s;
        return out;
    }

    friend BiPoly operator*(const Rational& s, const BiPoly& a) { return a * s; }
    friend BiPoly operator*(const BiPoly& a, const UniPoly& u) { return a * from(u); }
    friend BiPoly operator*(const UniPoly& u, const BiPoly& a) { return from(u) * a; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    /// Flat form "c*x^i*z^j + ..." ordered by (x-power, z-power).
    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty())
                out += " + ";
            out += dualroots::to_string(c);
            out += monomial_suffix(e.first, e.second);
        }
        return out;
    }

    /// Grouped by x-power: "(1 + 3/2*z + 1/2*z^2) + (-2 + -1*z)*x + (1/2)*x^2".
    std::string to_string_grouped() const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int i = 0; i <= x_degree(); ++i) {
            const UniPoly s = slice(Var::X, i);
            if (s.is_zero())
                continue;
            if (!out.empty())
                out += " + ";
            out += "(" + s.to_string() + ")";
            if (i >= 1)
                out += "*x";
            if (i >= 2)
                out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    static std::string monomial_suffix(int i, int j)
    {
        std::string s;
        if (i >= 1)
            s += "*x";
        if (i >= 2)
            s += "^" + std::to_string(i);
        if (j >= 1)
            s += "*z";
        if (j >= 2)
            s += "^" + std::to_string(j);
        return s;
    }

    TermMap terms_;
};

} // namespace dualroots

#endif // DUALROOTS_BIPOLY_HPP
