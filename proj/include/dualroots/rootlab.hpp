#ifndef DUALROOTS_ROOTLAB_HPP
#define DUALROOTS_ROOTLAB_HPP

#include "errors.hpp"
#include "families.hpp"
#include "parallel.hpp"
#include "sturm.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dualroots {

/// Theorem-check refinement target (1e-30).
inline Rational default_theorem_tolerance() { return ten_to_minus(30); }
/// CSV/reporting refinement target (1e-12).
inline Rational default_output_tolerance() { return ten_to_minus(12); }
/// Below this width two overlapping enclosures are declared unresolved (1e-60).
inline Rational default_width_floor() { return ten_to_minus(60); }

/**
 * Certified enclosure of one real root: the root lies in (lo, hi], or equals lo
 * exactly when lo == hi.
 */
struct RootEnclosure {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& t) const { return exact() ? t == lo : (lo < t && t <= hi); }
};

struct RootIsolation {
    UniPoly poly;
    SquarefreeDecomposition squarefree;
    std::vector<RootEnclosure> intervals; ///< ascending, pairwise disjoint
    std::vector<int> multiplicities;      ///< parallel to intervals
    int degree = 0;
    int real_count = 0;      ///< distinct real roots
    int nonreal_deficit = 0; ///< degree - sum(multiplicities), always even

    int real_with_multiplicity() const
    {
        int s = 0;
        for (int m : multiplicities)
            s += m;
        return s;
    }

    bool real_rooted() const { return nonreal_deficit == 0; }
    bool all_simple() const { return squarefree.all_simple(); }

    int sign_of_part(const Rational& t) const { return squarefree.part.sign_at(t); }
};

namespace detail {

/// Cauchy bound 1 + max |a_i / a_d|, rounded up to a power of two so bisection stays dyadic.
inline Rational dyadic_root_bound(const UniPoly& p)
{
    Rational m = 0;
    const Rational lead = abs(p.leading());
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.coefficient(i)) / lead;
        if (r > m)
            m = r;
    }
    return power_of_two_at_least(m + 1);
}

/// Makes a one-root interval ready for sign bisection: exact if hi is a root, and lo never a root.
inline RootEnclosure settle(const UniPoly& part, const SturmSequence& sturm, Rational lo, Rational hi)
{
    while (true) {
        if (part.sign_at(hi) == 0)
            return {hi, hi};
        if (part.sign_at(lo) != 0)
            return {lo, hi};
        Rational mid = (lo + hi) / 2;
        if (sturm.count(lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
}

} // namespace detail

/**
 * Isolates the distinct real roots of p by Sturm-guided bisection of the
 * squarefree part, then attaches multiplicities from the Yun factors.
 */
inline RootIsolation isolate(const UniPoly& p)
{
    if (p.is_zero())
        throw std::invalid_argument("cannot isolate the roots of the zero polynomial");
    RootIsolation iso;
    iso.poly = p;
    iso.degree = p.degree();
    iso.squarefree = squarefree_part(p);
    const UniPoly& part = iso.squarefree.part;

    if (part.degree() >= 1) {
        const SturmSequence sturm(part);
        const Rational bound = detail::dyadic_root_bound(part);

        struct Pending {
            Rational lo, hi;
            int vlo, vhi;
        };
        std::vector<Pending> stack;
        stack.push_back({Rational(-bound), bound, sturm.variations_at(-bound), sturm.variations_at(bound)});
        while (!stack.empty()) {
            Pending cur = stack.back();
            stack.pop_back();
            const int c = cur.vlo - cur.vhi;
            if (c == 0)
                continue;
            if (c == 1) {
                iso.intervals.push_back(detail::settle(part, sturm, cur.lo, cur.hi));
                continue;
            }
            const Rational mid = (cur.lo + cur.hi) / 2;
            const int vmid = sturm.variations_at(mid);
            // right half first so the left one is processed next (ascending output)
            stack.push_back({mid, cur.hi, vmid, cur.vhi});
            stack.push_back({cur.lo, mid, cur.vlo, vmid});
        }
    }

    iso.real_count = static_cast<int>(iso.intervals.size());
    for (const auto& e : iso.intervals) {
        int mult = 0;
        for (std::size_t m = 0; m < iso.squarefree.factors.size(); ++m) {
            const UniPoly& f = iso.squarefree.factors[m];
            if (f.degree() <= 0)
                continue;
            const bool here = e.exact() ? f.sign_at(e.lo) == 0 : f.sign_at(e.lo) * f.sign_at(e.hi) < 0;
            if (here) {
                mult = static_cast<int>(m) + 1;
                break;
            }
        }
        if (mult == 0)
            throw std::logic_error("root enclosure not matched by any squarefree factor");
        iso.multiplicities.push_back(mult);
    }
    iso.nonreal_deficit = iso.degree - iso.real_with_multiplicity();
    return iso;
}

/// Bisects one enclosure (in place) until its width is <= tol or the root is hit exactly.
inline void refine_in_place(RootIsolation& iso, std::size_t index, const Rational& tol)
{
    if (index >= iso.intervals.size())
        throw std::out_of_range("root index out of range");
    RootEnclosure& e = iso.intervals[index];
    if (e.exact())
        return;
    const UniPoly& part = iso.squarefree.part;
    const int shi = part.sign_at(e.hi);
    while (!e.exact() && e.width() > tol) {
        Rational mid = (e.lo + e.hi) / 2;
        const int s = part.sign_at(mid);
        if (s == 0) {
            e = {mid, mid};
        } else if (s == shi) {
            e.hi = std::move(mid);
        } else {
            e.lo = std::move(mid);
        }
    }
}

inline RootEnclosure refine(const RootIsolation& iso, std::size_t index, const Rational& tol)
{
    RootIsolation copy = iso;
    refine_in_place(copy, index, tol);
    return copy.intervals[index];
}

inline void refine_all(RootIsolation& iso, const Rational& tol)
{
    for (std::size_t i = 0; i < iso.intervals.size(); ++i)
        refine_in_place(iso, i, tol);
}

enum class RootOrdering { Less, Equal, Greater, Unresolved };

inline std::string_view ordering_name(RootOrdering o)
{
    switch (o) {
    case RootOrdering::Less: return "<";
    case RootOrdering::Equal: return "=";
    case RootOrdering::Greater: return ">";
    case RootOrdering::Unresolved: return "?";
    }
    return "?";
}

namespace detail {

/// Certified order from the enclosures alone, if they already separate.
inline std::optional<RootOrdering> separated(const RootEnclosure& a, const RootEnclosure& b)
{
    if (a.exact() && b.exact())
        return a.lo < b.lo ? RootOrdering::Less : (a.lo == b.lo ? RootOrdering::Equal : RootOrdering::Greater);
    if (a.hi < b.lo || (a.hi == b.lo && !b.exact()))
        return RootOrdering::Less;
    if (b.hi < a.lo || (b.hi == a.lo && !a.exact()))
        return RootOrdering::Greater;
    return std::nullopt;
}

/// True when the two enclosed roots are provably the same number (a common root of both polynomials).
inline bool provably_equal(const RootIsolation& a, std::size_t i, const RootIsolation& b, std::size_t j, const UniPoly& common)
{
    if (common.degree() <= 0)
        return false;
    const RootEnclosure& ea = a.intervals[i];
    const RootEnclosure& eb = b.intervals[j];
    if (ea.exact())
        return eb.contains(ea.lo) && common.sign_at(ea.lo) == 0;
    if (eb.exact())
        return ea.contains(eb.lo) && common.sign_at(eb.lo) == 0;
    const Rational lo = std::max(ea.lo, eb.lo);
    const Rational hi = std::min(ea.hi, eb.hi);
    return lo < hi && sturm_count(common, lo, hi) >= 1;
}

} // namespace detail

/**
 * Orders root i of `a` against root j of `b`, refining both enclosures until
 * they separate, the roots are shown equal via gcd(a, b), or both widths drop
 * below `floor` (Unresolved).
 */
inline RootOrdering compare_roots(RootIsolation& a, std::size_t i, RootIsolation& b, std::size_t j,
                                  const Rational& floor = default_width_floor())
{
    if (&a == &b && i == j)
        return RootOrdering::Equal;
    std::optional<UniPoly> common;
    while (true) {
        if (auto s = detail::separated(a.intervals[i], b.intervals[j]))
            return *s;
        if (!common)
            common = &a == &b ? UniPoly::constant(1) : gcd(a.squarefree.part, b.squarefree.part);
        if (detail::provably_equal(a, i, b, j, *common))
            return RootOrdering::Equal;
        const Rational wa = a.intervals[i].width();
        const Rational wb = b.intervals[j].width();
        if (wa <= floor && wb <= floor)
            return RootOrdering::Unresolved;
        if (wa > floor)
            refine_in_place(a, i, wa / 2);
        if (wb > floor)
            refine_in_place(b, j, wb / 2);
    }
}

/// Isolation of the z-polynomial P(x0, z) or the x-polynomial P(x, z0).
inline RootIsolation isolate_specialization(const BiPoly& p, Var fixed, const Rational& value)
{
    return isolate(p.specialize(fixed, value));
}

// ---------------------------------------------------------------------------
// Moving roots gamma_i^n(x) of the reduced Gegenbauer polynomial.

enum class GammaOrder { ByModulus, ByValueDescending };

inline std::string_view gamma_order_name(GammaOrder o)
{
    return o == GammaOrder::ByModulus ? "nondecreasing-modulus" : "decreasing-value";
}

struct GammaRoots {
    int n = 0;
    Rational x;
    GammaOrder order = GammaOrder::ByModulus;
    std::vector<RootEnclosure> values; ///< gamma_1, gamma_2, ... in `order`
    std::vector<std::size_t> source;   ///< index of each value in isolation.intervals
    bool complete = false;             ///< floor(n/2) distinct real roots found
    bool tie_flagged = false;          ///< a modulus tie was broken by sign
    RootIsolation isolation;
};

namespace detail {

inline std::pair<Rational, Rational> modulus_range(const RootEnclosure& e)
{
    if (sgn(e.lo) >= 0)
        return {e.lo, e.hi};
    if (sgn(e.hi) <= 0)
        return {Rational(-e.hi), Rational(-e.lo)};
    return {Rational(0), std::max(Rational(-e.lo), e.hi)};
}

/// |root i| < |root j|, refining on overlap; exact or unresolvable ties go negative-first.
inline bool modulus_less(RootIsolation& iso, std::size_t i, std::size_t j, const Rational& floor, bool& tie)
{
    while (true) {
        const RootEnclosure& a = iso.intervals[i];
        const RootEnclosure& b = iso.intervals[j];
        const auto [alo, ahi] = modulus_range(a);
        const auto [blo, bhi] = modulus_range(b);
        if (ahi < blo)
            return true;
        if (bhi < alo)
            return false;
        const bool resolved_tie = (a.exact() && b.exact()) || (a.width() <= floor && b.width() <= floor);
        if (resolved_tie) {
            if (a.exact() && b.exact() && abs(a.lo) != abs(b.lo))
                return abs(a.lo) < abs(b.lo);
            tie = true;
            return a.hi < b.hi; // negative first
        }
        if (a.width() > floor)
            refine_in_place(iso, i, a.width() / 2);
        if (iso.intervals[j].width() > floor)
            refine_in_place(iso, j, iso.intervals[j].width() / 2);
    }
}

} // namespace detail

/**
 * Roots in z of the reduced Gegenbauer polynomial at a fixed x != 0.
 * Inside [-1, 1] fewer than floor(n/2) real roots is reported as a TheoremViolation.
 */
inline GammaRoots gamma_roots(int n, const Rational& x, const Rational& tol = default_theorem_tolerance(),
                              GammaOrder order = GammaOrder::ByModulus)
{
    if (n < 2)
        throw std::invalid_argument("gamma roots need n >= 2");
    if (sgn(x) == 0)
        throw std::domain_error("gamma roots are defined only for x != 0");
    GammaRoots g;
    g.n = n;
    g.x = x;
    g.order = order;
    g.isolation = isolate(family({FamilyKind::GegenbauerTilde, n}).specialize(Var::X, x));
    const int expected = n / 2;
    g.complete = g.isolation.real_count == expected;
    if (!g.complete && abs(x) <= 1)
        throw TheoremViolation("thm-gegenbauerz",
                               "reduced G_" + std::to_string(n) + "(" + to_string(x) + ", z) has "
                                   + std::to_string(g.isolation.real_count) + " distinct real roots, expected "
                                   + std::to_string(expected),
                               g.isolation.poly.to_string());
    refine_all(g.isolation, tol);

    std::vector<std::size_t> idx(g.isolation.intervals.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    if (order == GammaOrder::ByValueDescending) {
        std::reverse(idx.begin(), idx.end());
    } else {
        // insertion sort: the comparator refines enclosures as it goes
        const Rational floor = default_width_floor();
        for (std::size_t a = 1; a < idx.size(); ++a)
            for (std::size_t b = a; b > 0 && detail::modulus_less(g.isolation, idx[b], idx[b - 1], floor, g.tie_flagged); --b)
                std::swap(idx[b], idx[b - 1]);
    }
    g.source = idx;
    for (auto i : idx)
        g.values.push_back(g.isolation.intervals[i]);
    return g;
}

// ---------------------------------------------------------------------------
// Non-real deficit scans.

struct DeficitEntry {
    Rational x;
    bool zero_polynomial = false;
    bool inside_support = false;
    int degree = -1;
    int real_with_multiplicity = 0;
    int nonreal_deficit = 0;
    bool all_simple = false;
};

inline bool inside_support(FamilyKind kind, const Rational& x)
{
    if (kind == FamilyKind::Laguerre)
        return sgn(x) >= 0;
    return abs(x) <= 1;
}

/// Deficit from the squarefree profile and Sturm counts, no bisection needed.
inline DeficitEntry deficit_of(const UniPoly& p)
{
    DeficitEntry e;
    if (p.is_zero()) {
        e.zero_polynomial = true;
        return e;
    }
    const SquarefreeDecomposition sq = squarefree_part(p);
    e.degree = p.degree();
    e.real_with_multiplicity = real_root_count_with_multiplicity(sq);
    e.nonreal_deficit = e.degree - e.real_with_multiplicity;
    e.all_simple = sq.all_simple();
    return e;
}

inline std::vector<DeficitEntry> nonreal_scan(FamilyId f, const std::vector<Rational>& x_grid, int jobs = 1)
{
    const BiPoly& p = family(f);
    return parallel_map(
        x_grid,
        [&](const Rational& x0) {
            DeficitEntry e = deficit_of(p.specialize(Var::X, x0));
            e.x = x0;
            e.inside_support = inside_support(f.kind, x0);
            return e;
        },
        jobs);
}

} // namespace dualroots

#endif // DUALROOTS_ROOTLAB_HPP
