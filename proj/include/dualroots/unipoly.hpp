#ifndef DUALROOTS_UNIPOLY_HPP
#define DUALROOTS_UNIPOLY_HPP

#include "rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualroots {

enum class Var : char { X = 'x', Z = 'z' };

inline char var_name(Var v) { return static_cast<char>(v); }

inline Var other(Var v) { return v == Var::X ? Var::Z : Var::X; }

inline Var parse_var(char c)
{
    if (c == 'x')
        return Var::X;
    if (c == 'z')
        return Var::Z;
    throw std::invalid_argument(std::string("unknown variable tag '") + c + "'");
}

/**
 * Dense univariate polynomial with exact rational coefficients.
 *
 * coeffs_[i] is the coefficient of t^i. The coefficient vector never carries a
 * trailing zero, so the zero polynomial is the empty vector and degree() is -1.
 */
class UniPoly {
public:
    UniPoly() = default;

    explicit UniPoly(std::vector<Rational> coeffs, Var v = Var::Z)
        : coeffs_(std::move(coeffs)), var_(v)
    {
        trim();
    }

    static UniPoly constant(const Rational& c, Var v = Var::Z) { return UniPoly({c}, v); }

    static UniPoly monomial(const Rational& c, int degree, Var v = Var::Z)
    {
        std::vector<Rational> co(static_cast<std::size_t>(degree) + 1, Rational(0));
        co.back() = c;
        return UniPoly(std::move(co), v);
    }

    /// The monic linear factor (t - root).
    static UniPoly linear_factor(const Rational& root, Var v = Var::Z)
    {
        return UniPoly({Rational(-root), Rational(1)}, v);
    }

    static UniPoly from_roots(const std::vector<Rational>& roots, Var v = Var::Z)
    {
        UniPoly p = constant(1, v);
        for (const auto& r : roots)
            p = p * linear_factor(r, v);
        return p;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    Var var() const { return var_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Rational coefficient(int i) const
    {
        if (i < 0 || i > degree())
            return 0;
        return coeffs_[static_cast<std::size_t>(i)];
    }

    const Rational& leading() const
    {
        if (is_zero())
            throw std::logic_error("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    UniPoly with_var(Var v) const { return UniPoly(coeffs_, v); }

    Rational operator()(const Rational& t) const
    {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= t;
            acc += *it;
        }
        return acc;
    }

    /// Horner evaluation in another arithmetic (double, cpp_bin_float, ...).
    template <class T, class Convert>
    T evaluate(const T& t, Convert&& convert) const
    {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * t + convert(*it);
        return acc;
    }

    int sign_at(const Rational& t) const { return sgn((*this)(t)); }

    /// Sign as t -> +inf (positive) or t -> -inf.
    int sign_at_infinity(bool positive) const
    {
        if (is_zero())
            return 0;
        const int s = sgn(leading());
        return (positive || degree() % 2 == 0) ? s : -s;
    }

    UniPoly derivative(int k = 1) const
    {
        if (k < 0)
            throw std::invalid_argument("negative derivative order");
        if (k > degree())
            return UniPoly({}, var_);
        std::vector<Rational> out(coeffs_.size() - static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < out.size(); ++i) {
            Integer f = 1;
            for (std::size_t j = i + 1; j <= i + static_cast<std::size_t>(k); ++j)
                f *= static_cast<unsigned long>(j);
            out[i] = coeffs_[i + static_cast<std::size_t>(k)] * Rational(f);
        }
        return UniPoly(std::move(out), var_);
    }

    /// p(t + c), re-expanded exactly.
    UniPoly shifted(const Rational& c) const
    {
        // Horner in the ring: acc = acc * (t + c) + a_i
        UniPoly acc({}, var_);
        const UniPoly step({c, Rational(1)}, var_);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * step + constant(*it, var_);
        return acc;
    }

    /// p(-t).
    UniPoly reflected() const
    {
        std::vector<Rational> out = coeffs_;
        for (std::size_t i = 1; i < out.size(); i += 2)
            out[i] = -out[i];
        return UniPoly(std::move(out), var_);
    }

    UniPoly monic() const
    {
        if (is_zero())
            return *this;
        return *this * Rational(1 / leading());
    }

    /// Multiplicity of 0 as a root (the zero polynomial reports -1).
    int zero_multiplicity() const
    {
        if (is_zero())
            return -1;
        int m = 0;
        while (sgn(coeffs_[static_cast<std::size_t>(m)]) == 0)
            ++m;
        return m;
    }

    /// Sum of absolute coefficient values.
    Rational abs_coefficient_sum() const
    {
        Rational s = 0;
        for (const auto& c : coeffs_)
            s += abs(c);
        return s;
    }

    UniPoly operator-() const
    {
        std::vector<Rational> out = coeffs_;
        for (auto& c : out)
            c = -c;
        return UniPoly(std::move(out), var_);
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b)
    {
        const Var v = unify(a, b);
        std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            out[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
            out[i] += b.coeffs_[i];
        return UniPoly(std::move(out), v);
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        const Var v = unify(a, b);
        if (a.is_zero() || b.is_zero())
            return UniPoly({}, v);
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (sgn(a.coeffs_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return UniPoly(std::move(out), v);
    }

    friend UniPoly operator*(const UniPoly& a, const Rational& s)
    {
        if (sgn(s) == 0)
            return UniPoly({}, a.var_);
        std::vector<Rational> out = a.coeffs_;
        for (auto& c : out)
            c *= s;
        return UniPoly(std::move(out), a.var_);
    }

    friend UniPoly operator*(const Rational& s, const UniPoly& a) { return a * s; }

    /// Equality of coefficient sequences; the variable tag of a constant is not significant.
    friend bool operator==(const UniPoly& a, const UniPoly& b)
    {
        if (a.coeffs_ != b.coeffs_)
            return false;
        return a.is_constant() || a.var_ == b.var_;
    }

    /// Euclidean division a = q*b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b)
    {
        const Var v = unify(a, b);
        if (b.is_zero())
            throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree())
            return {UniPoly({}, v), a.with_var(v)};
        std::vector<Rational> rem = a.coeffs_;
        std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
        const Rational inv_lead = 1 / b.leading();
        const std::size_t db = static_cast<std::size_t>(b.degree());
        for (std::size_t k = quot.size(); k-- > 0;) {
            const Rational c = rem[k + db] * inv_lead;
            quot[k] = c;
            if (sgn(c) == 0)
                continue;
            for (std::size_t j = 0; j <= db; ++j)
                rem[k + j] -= c * b.coeffs_[j];
        }
        rem.resize(db);
        return {UniPoly(std::move(quot), v), UniPoly(std::move(rem), v)};
    }

    /// Exact quotient; throws when b does not divide a.
    static UniPoly divide_exact(const UniPoly& a, const UniPoly& b)
    {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero())
            throw std::logic_error("non-exact polynomial division");
        return q;
    }

    /**
     * Debug/golden text form "c0 + c1*z + c2*z^2" with exact p/q coefficients.
     * Zero coefficients are omitted; the zero polynomial prints as "0".
     */
    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string out;
        const char name = var_name(var_);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (sgn(coeffs_[i]) == 0)
                continue;
            if (!out.empty())
                out += " + ";
            out += dualroots::to_string(coeffs_[i]);
            if (i >= 1) {
                out += '*';
                out += name;
            }
            if (i >= 2)
                out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
            coeffs_.pop_back();
    }

    static Var unify(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_constant())
            return b.var_;
        if (b.is_constant())
            return a.var_;
        if (a.var_ != b.var_)
            throw std::invalid_argument("polynomials in different variables");
        return a.var_;
    }

    std::vector<Rational> coeffs_;
    Var var_ = Var::Z;
};

} // namespace dualroots

#endif // DUALROOTS_UNIPOLY_HPP
