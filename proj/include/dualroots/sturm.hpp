#ifndef DUALROOTS_STURM_HPP
#define DUALROOTS_STURM_HPP

#include "unipoly.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dualroots {

/// Monic gcd (zero only when both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b)
{
    while (!b.is_zero()) {
        UniPoly r = UniPoly::divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? std::move(r) : r.monic();
    }
    return a.monic();
}

/// One cluster of the squarefree profile: `degree` distinct roots, each of multiplicity `multiplicity`.
struct MultiplicityCluster {
    int degree;
    int multiplicity;

    friend bool operator==(const MultiplicityCluster&, const MultiplicityCluster&) = default;
};

struct SquarefreeDecomposition {
    UniPoly part;                          ///< p / gcd(p, p'), monic
    UniPoly gcd_with_derivative;           ///< gcd(p, p'), monic
    std::vector<UniPoly> factors;          ///< factors[m-1] collects the roots of multiplicity m
    std::vector<MultiplicityCluster> profile;

    bool all_simple() const { return gcd_with_derivative.degree() == 0; }
};

/// Yun's algorithm over Q.
inline SquarefreeDecomposition squarefree_part(const UniPoly& p)
{
    if (p.is_zero())
        throw std::invalid_argument("squarefree decomposition of the zero polynomial");
    SquarefreeDecomposition out;
    const UniPoly dp = p.derivative();
    out.gcd_with_derivative = gcd(p, dp);
    // b and c must share one scaling for the d = c - b' step to stay exact
    UniPoly b = UniPoly::divide_exact(p, out.gcd_with_derivative);
    out.part = b.monic();
    UniPoly c = UniPoly::divide_exact(dp, out.gcd_with_derivative);
    UniPoly d = c - b.derivative();
    int m = 1;
    while (b.degree() > 0) {
        UniPoly a = gcd(b, d);
        b = UniPoly::divide_exact(b, a);
        c = UniPoly::divide_exact(d, a);
        d = c - b.derivative();
        out.factors.push_back(a.monic());
        if (a.degree() > 0)
            out.profile.push_back({a.degree(), m});
        ++m;
    }
    return out;
}

/**
 * Sturm chain p, p', -rem(p, p'), ... with every entry rescaled by a positive
 * rational (its |leading coefficient|), which keeps signs intact.
 *
 * When p has repeated roots the last entry is a nonconstant gcd; counting then
 * runs on the chain divided through by that gcd, a Sturm sequence for the
 * squarefree part, so that roots sitting on an interval endpoint are handled.
 */
class SturmSequence {
public:
    explicit SturmSequence(const UniPoly& p)
    {
        if (p.is_zero())
            throw std::invalid_argument("Sturm sequence of the zero polynomial");
        chain_.push_back(normalized(p));
        if (p.degree() == 0)
            return;
        chain_.push_back(normalized(p.derivative()));
        while (true) {
            UniPoly r = UniPoly::divmod(chain_[chain_.size() - 2], chain_.back()).second;
            if (r.is_zero())
                break;
            chain_.push_back(normalized(-r));
        }
        if (chain_.back().degree() > 0) {
            reduced_.reserve(chain_.size());
            for (const auto& f : chain_)
                reduced_.push_back(UniPoly::divide_exact(f, chain_.back()));
        }
    }

    const std::vector<UniPoly>& chain() const { return chain_; }
    const UniPoly& last() const { return chain_.back(); }

    int variations_at(const Rational& t) const
    {
        int prev = 0;
        int v = 0;
        for (const auto& f : counting_chain()) {
            const int s = f.sign_at(t);
            if (s == 0)
                continue;
            if (prev != 0 && s != prev)
                ++v;
            prev = s;
        }
        return v;
    }

    int variations_at_infinity(bool positive) const
    {
        int prev = 0;
        int v = 0;
        for (const auto& f : counting_chain()) {
            const int s = f.sign_at_infinity(positive);
            if (s == 0)
                continue;
            if (prev != 0 && s != prev)
                ++v;
            prev = s;
        }
        return v;
    }

    /// Distinct real roots in (lo, hi]; std::nullopt stands for -inf / +inf.
    int count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const
    {
        const int vlo = lo ? variations_at(*lo) : variations_at_infinity(false);
        const int vhi = hi ? variations_at(*hi) : variations_at_infinity(true);
        if (lo && hi && *hi <= *lo)
            return 0;
        return vlo - vhi;
    }

    int count_all() const { return count(std::nullopt, std::nullopt); }

private:
    static UniPoly normalized(const UniPoly& f) { return f * Rational(1 / abs(f.leading())); }

    const std::vector<UniPoly>& counting_chain() const { return reduced_.empty() ? chain_ : reduced_; }

    std::vector<UniPoly> chain_;
    std::vector<UniPoly> reduced_;
};

/// Number of distinct real roots of p in (lo, hi].
inline int sturm_count(const UniPoly& p, const std::optional<Rational>& lo = std::nullopt,
                       const std::optional<Rational>& hi = std::nullopt)
{
    return SturmSequence(p).count(lo, hi);
}

/// Real roots counted with multiplicity, from the squarefree profile.
inline int real_root_count_with_multiplicity(const SquarefreeDecomposition& sq)
{
    int total = 0;
    for (std::size_t i = 0; i < sq.factors.size(); ++i)
        if (sq.factors[i].degree() > 0)
            total += static_cast<int>(i + 1) * sturm_count(sq.factors[i]);
    return total;
}

} // namespace dualroots

#endif // DUALROOTS_STURM_HPP
