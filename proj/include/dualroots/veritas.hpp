#ifndef DUALROOTS_VERITAS_HPP
#define DUALROOTS_VERITAS_HPP

#include "interlacing.hpp"
#include "numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dualroots {

// ---------------------------------------------------------------------------
// Exact identities of the families (residues must vanish as polynomials).

struct IdentityReport {
    std::string theorem_id = "def-families";
    std::string name;
    int n = 0;
    BiPoly residue;

    bool passed() const { return residue.is_zero(); }
    Outcome outcome() const { return passed() ? Outcome::Pass : Outcome::Fail; }
};

inline std::vector<IdentityReport> exact_identities(int n)
{
    if (n < 1)
        throw std::invalid_argument("identities are checked for n >= 1");
    const BiPoly x = BiPoly::x();
    const BiPoly z = BiPoly::z();
    const BiPoly one = BiPoly::constant(1);
    const Rational nn(n);
    const BiPoly& L = laguerre(n);
    const BiPoly& G = gegenbauer(n);
    const BiPoly& Gm1 = gegenbauer(n - 1);
    const BiPoly& H = gegenbauer_modified(n);
    const BiPoly one_minus_x2 = one - x * x;

    auto hyper = [&](const BiPoly& y) {
        return one_minus_x2 * y.differentiate(Var::X, 2) - (2 * z + one) * x * y.differentiate(Var::X)
               + nn * (BiPoly::constant(nn) + 2 * z) * y;
    };

    std::vector<IdentityReport> out;
    out.push_back({"def-families", "kummer-ode", n,
                   x * L.differentiate(Var::X, 2) + (z + BiPoly::constant(1) - x) * L.differentiate(Var::X) + nn * L});
    out.push_back({"def-families", "gegenbauer-ode", n, hyper(G)});
    out.push_back({"def-families", "modified-gegenbauer-ode", n, hyper(H)});
    out.push_back({"def-families", "szego-derivative", n,
                   one_minus_x2 * G.differentiate(Var::X) + nn * x * G - (BiPoly::constant(nn - 1) + 2 * z) * Gm1});
    out.push_back({"def-families", "szego-recurrence", n,
                   Rational(n + 1) * gegenbauer(n + 1) - 2 * (BiPoly::constant(nn) + z) * x * G
                       + (BiPoly::constant(nn - 1) + 2 * z) * Gm1});
    out.push_back({"def-families", "szego-shift", n, G.differentiate(Var::X) - 2 * z * Gm1.shift_z(1)});

    // 2^n prod (z + i/2) hat G_n = prod (z + 1/2 + i) G_n
    UniPoly left = UniPoly::constant(pow_int(Rational(2), static_cast<unsigned long>(n)), Var::Z);
    UniPoly right = UniPoly::constant(1, Var::Z);
    for (int i = 0; i < n; ++i) {
        left = left * UniPoly({make_rational(i, 2), Rational(1)}, Var::Z);
        right = right * UniPoly({make_rational(1, 2) + i, Rational(1)}, Var::Z);
    }
    out.push_back({"def-families", "modified-rescaling", n, left * H - right * G});

    const TildeDecomposition t = gegenbauer_tilde(n);
    out.push_back({"def-families", "tilde-factorization", n, G - t.constant_factor() * t.reduced});
    return out;
}

// ---------------------------------------------------------------------------
// Real-rootedness in z of a family specialization.

struct RealRootednessReport {
    std::string theorem_id;
    FamilyId family{FamilyKind::Laguerre, 0};
    Rational x0;
    int degree = 0;
    int distinct_real = 0;
    int real_with_multiplicity = 0;
    int nonreal_deficit = 0;
    int max_multiplicity = 0;
    bool all_simple = false;
    bool require_simple = false;
    int moving_roots = -1;          ///< distinct real roots of the reduced polynomial (Gegenbauer only)
    int expected_moving_roots = -1;
    std::string problem;

    Outcome outcome() const { return problem.empty() ? Outcome::Pass : Outcome::Fail; }
};

inline RealRootednessReport verify_realrootedness(FamilyId f, const Rational& x0)
{
    RealRootednessReport r;
    r.family = f;
    r.x0 = x0;
    switch (f.kind) {
    case FamilyKind::Laguerre:
        r.theorem_id = "cor-laguerrez";
        if (sgn(x0) < 0)
            throw std::domain_error("Laguerre real-rootedness in z is stated for x0 >= 0");
        break;
    case FamilyKind::Gegenbauer:
    case FamilyKind::GegenbauerModified:
        r.theorem_id = f.kind == FamilyKind::Gegenbauer ? "thm-gegenbauerz" : "cor-gegenbauerzmod";
        r.require_simple = f.kind == FamilyKind::GegenbauerModified;
        if (sgn(x0) == 0 || abs(x0) > 1)
            throw std::domain_error("Gegenbauer real-rootedness in z is stated for x0 in [-1,0) U (0,1]");
        break;
    default:
        throw std::invalid_argument("real-rootedness check covers laguerre, gegenbauer, gegenbauer-modified");
    }
    const RootIsolation iso = isolate(family(f).specialize(Var::X, x0));
    r.degree = iso.degree;
    r.distinct_real = iso.real_count;
    r.real_with_multiplicity = iso.real_with_multiplicity();
    r.nonreal_deficit = iso.nonreal_deficit;
    r.all_simple = iso.all_simple();
    for (int m : iso.multiplicities)
        r.max_multiplicity = std::max(r.max_multiplicity, m);
    if (r.degree != f.n)
        r.problem = "z-degree " + std::to_string(r.degree) + " != n";
    else if (r.nonreal_deficit != 0)
        r.problem = std::to_string(r.nonreal_deficit) + " non-real roots";
    else if (r.require_simple && !r.all_simple)
        r.problem = "repeated root";
    else if (f.kind == FamilyKind::Gegenbauer && r.max_multiplicity > 2)
        r.problem = "root of multiplicity " + std::to_string(r.max_multiplicity);
    if (f.kind == FamilyKind::Gegenbauer && f.n >= 2) {
        r.expected_moving_roots = f.n / 2;
        r.moving_roots = isolate(family({FamilyKind::GegenbauerTilde, f.n}).specialize(Var::X, x0)).real_count;
        if (r.problem.empty() && r.moving_roots != r.expected_moving_roots)
            r.problem = "reduced polynomial has " + std::to_string(r.moving_roots) + " distinct real roots";
    }
    return r;
}

// ---------------------------------------------------------------------------
// Classical x-interlacing and dual z-interlacing.

inline std::string family_label(FamilyId f, int n_offset = 0)
{
    return std::string(family_name(f.kind)) + "(" + std::to_string(f.n + n_offset) + ")";
}

/// P_n vs P_{n-1} and P_n vs d/dx P_n as polynomials in x at z = z0.
inline std::vector<InterlacingReport> verify_classical_x_interlacing(FamilyId f, const Rational& z0)
{
    if (f.n < 1)
        throw std::invalid_argument("x-interlacing needs n >= 1");
    switch (f.kind) {
    case FamilyKind::Laguerre:
        if (z0 <= -1)
            throw std::domain_error("Laguerre x-interlacing needs z0 > -1");
        break;
    case FamilyKind::Gegenbauer:
        if (z0 <= make_rational(-1, 2))
            throw std::domain_error("Gegenbauer x-interlacing needs z0 > -1/2");
        if (sgn(z0) == 0)
            throw std::domain_error("G_n(x, 0) vanishes identically; use gegenbauer-modified at z0 = 0");
        break;
    case FamilyKind::GegenbauerModified:
        if (z0 <= make_rational(-1, 2))
            throw std::domain_error("modified Gegenbauer x-interlacing needs z0 > -1/2");
        break;
    default:
        throw std::invalid_argument("x-interlacing covers laguerre, gegenbauer, gegenbauer-modified");
    }
    const BiPoly& P = family(f);
    const UniPoly pn = P.specialize(Var::Z, z0);
    const UniPoly pm = family({f.kind, f.n - 1}).specialize(Var::Z, z0);
    const UniPoly dp = P.differentiate(Var::X).specialize(Var::Z, z0);

    std::vector<InterlacingReport> out;
    out.push_back(check_interlacing(pn, pm, InterlaceMode::Strict));
    out.back().label = family_label(f) + " vs " + family_label(f, -1);
    out.push_back(check_interlacing(pn, dp, InterlaceMode::Strict));
    out.back().label = family_label(f) + " vs d/dx";
    for (auto& r : out) {
        r.theorem_id = "thm-interlderiv";
        r.inputs = {{"family", std::string(family_name(f.kind))}, {"n", std::to_string(f.n)}, {"z0", to_string(z0)}, {"variable", "x"}};
    }
    return out;
}

/// Constant z-roots (independent of x) of the Gegenbauer or modified Gegenbauer family.
inline std::vector<Rational> constant_z_roots(FamilyKind kind, int n)
{
    if (n < 1)
        return {};
    if (kind == FamilyKind::Gegenbauer)
        return build_gegenbauer_tilde(n).constant_roots;
    if (kind == FamilyKind::GegenbauerModified)
        return modified_factor_rule(n).extra_constant_roots;
    throw std::invalid_argument("constant z-roots are tracked for gegenbauer and gegenbauer-modified");
}

/// Constant roots shared by P_n and P_{n-1} (or by P_n and d/dx P_n when `derivative`).
inline std::vector<Rational> shared_constant_roots(FamilyKind kind, int n, bool derivative)
{
    const std::vector<Rational> own = constant_z_roots(kind, n);
    if (derivative)
        return own;
    const std::vector<Rational> prev = constant_z_roots(kind, n - 1);
    std::vector<Rational> out;
    for (const auto& r : own)
        if (std::find(prev.begin(), prev.end(), r) != prev.end())
            out.push_back(r);
    return out;
}

/**
 * Dual interlacing in z at x = x0 for G and hat G: P_n vs P_{n-1} and P_n vs d/dx P_n.
 * The full pairs share constant roots, so they are checked weakly. The shared
 * constant roots are then taken from the constant-root ledger, confirmed by
 * exact evaluation, and divided out; the remaining pairs must interlace
 * strictly for |x0| < 1. At |x0| = 1 moving roots also meet, so weak is checked.
 */
inline std::vector<InterlacingReport> verify_dual_interlacing(int n, const Rational& x0)
{
    if (n < 1)
        throw std::invalid_argument("dual interlacing needs n >= 1");
    if (abs(x0) > 1)
        throw std::domain_error("dual interlacing is stated for x0 in [-1, 1]");
    const std::map<std::string, std::string> inputs{{"n", std::to_string(n)}, {"x0", to_string(x0)}, {"variable", "z"}};
    const FamilyKind kinds[] = {FamilyKind::Gegenbauer, FamilyKind::GegenbauerModified};
    std::vector<InterlacingReport> out;
    for (FamilyKind kind : kinds) {
        const FamilyId f{kind, n};
        const std::string id = kind == FamilyKind::Gegenbauer ? "thm-dualinterlG" : "cor-dualinterlGmod";
        const std::string names[] = {family_label(f) + " vs " + family_label(f, -1), family_label(f) + " vs d/dx"};
        if (sgn(x0) == 0) {
            for (const auto& name : names) {
                InterlacingReport r;
                r.theorem_id = id;
                r.label = name;
                r.inputs = inputs;
                r.verdict = InterlaceVerdict::DegenerateAtZero;
                r.note = "x0 = 0: one polynomial may vanish identically; no convention is chosen";
                out.push_back(std::move(r));
            }
            continue;
        }
        const BiPoly& P = family(f);
        const UniPoly pn = P.specialize(Var::X, x0);
        const UniPoly others[] = {family({kind, n - 1}).specialize(Var::X, x0), P.differentiate(Var::X).specialize(Var::X, x0)};
        const InterlaceMode reduced_mode = abs(x0) < 1 ? InterlaceMode::Strict : InterlaceMode::Weak;
        for (int which = 0; which < 2; ++which) {
            const UniPoly& q = others[which];
            out.push_back(check_interlacing(pn, q, InterlaceMode::Weak));
            out.back().label = names[which];

            const std::vector<Rational> shared = shared_constant_roots(kind, n, which == 1);
            InterlacingReport reduced;
            bool ledger_ok = true;
            for (const auto& r : shared)
                if (sgn(pn(r)) != 0 || sgn(q(r)) != 0)
                    ledger_ok = false;
            if (ledger_ok) {
                const UniPoly common = UniPoly::from_roots(shared, Var::Z);
                reduced = check_interlacing(UniPoly::divide_exact(pn, common), UniPoly::divide_exact(q, common), reduced_mode);
                reduced.note = std::to_string(shared.size()) + " shared constant root(s) removed";
            } else {
                reduced.verdict = InterlaceVerdict::Fail;
                reduced.note = "constant-root ledger does not match: a listed shared root is not a root of both";
            }
            reduced.label = names[which] + " without shared constant roots";
            out.push_back(std::move(reduced));
        }
        for (std::size_t i = out.size() - 4; i < out.size(); ++i) {
            out[i].theorem_id = id;
            out[i].inputs = inputs;
        }
    }
    return out;
}

/// Reduced-family chains in z at fixed x: gamma_i^n > gamma_i^{n-1} > gamma_{i+1}^n, and
/// reduced G_{n-1}(x, z+1) against reduced G_n(x, z).
inline std::vector<InterlacingReport> verify_gamma_chains(int n, const Rational& x)
{
    if (n < 3)
        throw std::invalid_argument("gamma chains need n >= 3");
    if (sgn(x) == 0)
        throw std::domain_error("gamma chains are defined only for x != 0");
    const BiPoly& T = family({FamilyKind::GegenbauerTilde, n});
    const BiPoly& Tm = family({FamilyKind::GegenbauerTilde, n - 1});
    const UniPoly tn = T.specialize(Var::X, x);
    // the chains meet at the endpoints x = -1 and x = 1
    const InterlaceMode mode = abs(x) == 1 ? InterlaceMode::Weak : InterlaceMode::Strict;
    std::vector<InterlacingReport> out;
    out.push_back(check_interlacing(tn, Tm.specialize(Var::X, x), mode));
    out.back().label = "reduced(" + std::to_string(n) + ") vs reduced(" + std::to_string(n - 1) + ")";
    out.push_back(check_interlacing(tn, Tm.shift_z(1).specialize(Var::X, x), mode));
    out.back().label = "reduced(" + std::to_string(n) + ") vs reduced(" + std::to_string(n - 1) + ")(z+1)";
    for (auto& r : out) {
        r.theorem_id = "thm-gegenbauerz";
        r.inputs = {{"n", std::to_string(n)}, {"x", to_string(x)}, {"variable", "z"}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Root monotonicity along a parameter grid.

enum class Direction { Increasing, Decreasing };

enum class MonotonicityVerdict { Increasing, Decreasing, Fail, Inconclusive };

inline std::string_view monotonicity_verdict_name(MonotonicityVerdict v)
{
    switch (v) {
    case MonotonicityVerdict::Increasing: return "Increasing";
    case MonotonicityVerdict::Decreasing: return "Decreasing";
    case MonotonicityVerdict::Fail: return "Fail";
    case MonotonicityVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

inline std::string_view direction_name(Direction d) { return d == Direction::Increasing ? "Increasing" : "Decreasing"; }

/// Which roots are followed, and how they are numbered (index 1 = smallest or largest).
struct RootSelector {
    RootFilter filter = RootFilter::All;
    bool descending = false;
};

struct MonotonicityReport {
    std::string theorem_id;
    std::string label;
    std::map<std::string, std::string> inputs;
    int root_index = 0; ///< 1-based, per the selector's numbering
    std::vector<Rational> grid;
    std::vector<RootEnclosure> values;
    Direction expected = Direction::Increasing;
    MonotonicityVerdict verdict = MonotonicityVerdict::Inconclusive;
    std::optional<std::size_t> witness; ///< first grid step (j, j+1) that breaks the pattern
    std::string note;

    bool passed() const
    {
        return (expected == Direction::Increasing && verdict == MonotonicityVerdict::Increasing)
               || (expected == Direction::Decreasing && verdict == MonotonicityVerdict::Decreasing);
    }

    Outcome outcome() const
    {
        if (passed())
            return Outcome::Pass;
        return verdict == MonotonicityVerdict::Inconclusive ? Outcome::Inconclusive : Outcome::Fail;
    }
};

namespace detail {

inline std::vector<std::size_t> select_roots(const RootIsolation& iso, const RootSelector& sel)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < iso.intervals.size(); ++i)
        if (sel.filter == RootFilter::All || is_positive_root(iso.intervals[i]))
            idx.push_back(i);
    if (sel.descending)
        std::reverse(idx.begin(), idx.end());
    return idx;
}

} // namespace detail

/**
 * Follows each selected root of P(fixed = g, .) along a strictly increasing grid g
 * and certifies its direction of motion by ordered enclosures.
 */
inline std::vector<MonotonicityReport> verify_root_monotonicity(const BiPoly& P, Var fixed, const std::vector<Rational>& grid,
                                                                RootSelector sel, Direction expected, const std::string& theorem_id,
                                                                const std::string& label)
{
    if (grid.size() < 2)
        throw std::invalid_argument("monotonicity needs at least two grid points");
    for (std::size_t j = 0; j + 1 < grid.size(); ++j)
        if (!(grid[j] < grid[j + 1]))
            throw std::invalid_argument("monotonicity grid must be strictly increasing");

    std::vector<RootIsolation> isos;
    std::vector<std::vector<std::size_t>> picks;
    for (const auto& g : grid) {
        isos.push_back(isolate(P.specialize(fixed, g)));
        refine_all(isos.back(), default_theorem_tolerance());
        picks.push_back(detail::select_roots(isos.back(), sel));
    }
    const std::map<std::string, std::string> inputs{{"fixed", std::string(1, var_name(fixed))}, {"grid_points", std::to_string(grid.size())}};

    for (std::size_t j = 1; j < grid.size(); ++j) {
        if (picks[j].size() != picks[0].size()) {
            MonotonicityReport r;
            r.theorem_id = theorem_id;
            r.label = label;
            r.inputs = inputs;
            r.grid = grid;
            r.expected = expected;
            r.verdict = MonotonicityVerdict::Fail;
            r.witness = j - 1;
            r.note = "selected root count changes from " + std::to_string(picks[j - 1].size()) + " to " + std::to_string(picks[j].size());
            return {r};
        }
    }

    std::vector<MonotonicityReport> out;
    for (std::size_t i = 0; i < picks[0].size(); ++i) {
        MonotonicityReport r;
        r.theorem_id = theorem_id;
        r.label = label;
        r.inputs = inputs;
        r.root_index = static_cast<int>(i) + 1;
        r.grid = grid;
        r.expected = expected;
        int up = 0, down = 0;
        bool unresolved = false;
        for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
            const RootOrdering rel = compare_roots(isos[j], picks[j][i], isos[j + 1], picks[j + 1][i]);
            if (rel == RootOrdering::Less)
                ++up;
            else if (rel == RootOrdering::Greater)
                ++down;
            else if (rel == RootOrdering::Unresolved)
                unresolved = true;
            const bool breaks = rel == RootOrdering::Equal || rel == RootOrdering::Unresolved
                                || (expected == Direction::Increasing ? rel == RootOrdering::Greater : rel == RootOrdering::Less);
            if (breaks && !r.witness)
                r.witness = j;
        }
        const int steps = static_cast<int>(grid.size()) - 1;
        if (up == steps)
            r.verdict = MonotonicityVerdict::Increasing;
        else if (down == steps)
            r.verdict = MonotonicityVerdict::Decreasing;
        else if (unresolved && (up == 0 || down == 0))
            r.verdict = MonotonicityVerdict::Inconclusive;
        else
            r.verdict = MonotonicityVerdict::Fail;
        for (std::size_t j = 0; j < grid.size(); ++j)
            r.values.push_back(isos[j].intervals[picks[j][i]]);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string monotonicity_theorem(FamilyKind kind)
{
    return kind == FamilyKind::GegenbauerTilde ? "thm-gegenbauerz" : "thm-monoroots";
}

/// Family wrapper: x-roots over a z grid (fixed = Z) or z-roots over an x grid (fixed = X).
inline std::vector<MonotonicityReport> verify_root_monotonicity(FamilyId f, Var fixed, const std::vector<Rational>& grid,
                                                                RootSelector sel, Direction expected)
{
    auto out = verify_root_monotonicity(family(f), fixed, grid, sel, expected, monotonicity_theorem(f.kind), family_label(f));
    for (auto& r : out) {
        r.inputs["family"] = std::string(family_name(f.kind));
        r.inputs["n"] = std::to_string(f.n);
    }
    return out;
}

/// gamma_i^n over an x grid on one side of 0: increasing on [-1,0), decreasing on (0,1].
inline std::vector<MonotonicityReport> verify_gamma_monotonicity(int n, const std::vector<Rational>& grid)
{
    if (grid.empty())
        throw std::invalid_argument("empty grid");
    const bool negative = sgn(grid.front()) < 0;
    for (const auto& g : grid)
        if (sgn(g) == 0 || (sgn(g) < 0) != negative || abs(g) > 1)
            throw std::domain_error("gamma grid must lie inside [-1,0) or inside (0,1]");
    return verify_root_monotonicity({FamilyKind::GegenbauerTilde, n}, Var::X, grid, {RootFilter::All, true},
                                    negative ? Direction::Increasing : Direction::Decreasing);
}

// ---------------------------------------------------------------------------
// Derivative families in z.

struct DerivativeEntry {
    int k = 0;
    UniPoly poly;
    int degree = 0;
    int expected_degree = 0;
    int nonreal_deficit = 0;
    int positive_roots = 0;
    int expected_positive_roots = -1;   ///< modified Gegenbauer only
    int zero_multiplicity = 0;
    int expected_zero_multiplicity = -1; ///< modified Gegenbauer only
    std::optional<InterlacingReport> with_next;
    std::vector<MonotonicityReport> monotonicity;
    std::vector<std::string> problems;

    Outcome outcome() const
    {
        Outcome o = problems.empty() ? Outcome::Pass : Outcome::Fail;
        if (with_next)
            o = combine(o, with_next->outcome());
        for (const auto& m : monotonicity)
            o = combine(o, m.outcome());
        return o;
    }
};

struct DerivativeFamilyReport {
    std::string theorem_id;
    FamilyId family{FamilyKind::Laguerre, 0};
    Rational z0;
    std::vector<Rational> monotonicity_grid;
    std::vector<DerivativeEntry> entries;

    Outcome outcome() const
    {
        Outcome o = Outcome::Pass;
        for (const auto& e : entries)
            o = combine(o, e.outcome());
        return o;
    }
};

/// Positive-root count of the k-th z-derivative of hat G_n: floor(n/2) while k <= n - floor(n/2), then n - k.
inline int expected_positive_roots(int n, int k)
{
    const int h = n / 2;
    return k <= n - h ? h : n - k;
}

/// Multiplicity of the root x = 0: zero roots come in pairs once k passes n - floor(n/2), plus n mod 2.
inline int expected_zero_multiplicity(int n, int k)
{
    const int h = n / 2;
    return 2 * std::max(0, k - (n - h)) + n % 2;
}

/**
 * Profile of d^k/dz^k P_n(x, z0), k = 0..n, as polynomials in x: degree, real-rootedness,
 * strict interlacing of consecutive k (positive roots only for the modified family),
 * root motion in z over z0 + {0, 1/4, 1/2}, and for the modified family the
 * positive-root counts and zero multiplicities. Failures are recorded, not thrown.
 */
inline DerivativeFamilyReport verify_derivative_family(FamilyId f, const Rational& z0)
{
    const bool lag = f.kind == FamilyKind::Laguerre;
    if (!lag && f.kind != FamilyKind::GegenbauerModified)
        throw std::invalid_argument("derivative families cover laguerre and gegenbauer-modified");
    if (lag && z0 <= -1)
        throw std::domain_error("Laguerre derivative family needs z0 > -1");
    if (!lag && z0 <= make_rational(-1, 2))
        throw std::domain_error("modified Gegenbauer derivative family needs z0 > -1/2");
    if (f.n < 1)
        throw std::invalid_argument("derivative family needs n >= 1");

    DerivativeFamilyReport rep;
    rep.theorem_id = lag ? "thm-laguerreD" : "thm-gegenbauerD";
    rep.family = f;
    rep.z0 = z0;
    rep.monotonicity_grid = {z0, z0 + make_rational(1, 4), z0 + make_rational(1, 2)};
    const RootFilter filter = lag ? RootFilter::All : RootFilter::Positive;

    std::vector<BiPoly> derivs;
    for (int k = 0; k <= f.n; ++k)
        derivs.push_back(dz_family(f, k));

    for (int k = 0; k <= f.n; ++k) {
        DerivativeEntry e;
        e.k = k;
        e.poly = derivs[static_cast<std::size_t>(k)].specialize(Var::Z, z0);
        e.degree = e.poly.degree();
        e.expected_degree = lag ? f.n - k : f.n;
        if (e.degree != e.expected_degree)
            e.problems.push_back("degree " + std::to_string(e.degree) + ", expected " + std::to_string(e.expected_degree));
        const RootIsolation iso = isolate(e.poly);
        e.nonreal_deficit = iso.nonreal_deficit;
        if (e.nonreal_deficit != 0)
            e.problems.push_back(std::to_string(e.nonreal_deficit) + " non-real roots");
        for (std::size_t i = 0; i < iso.intervals.size(); ++i)
            if (detail::is_positive_root(iso.intervals[i]))
                e.positive_roots += iso.multiplicities[i];
        e.zero_multiplicity = e.poly.zero_multiplicity();
        if (!lag) {
            e.expected_positive_roots = expected_positive_roots(f.n, k);
            e.expected_zero_multiplicity = expected_zero_multiplicity(f.n, k);
            if (e.positive_roots != e.expected_positive_roots)
                e.problems.push_back(std::to_string(e.positive_roots) + " positive roots, expected "
                                     + std::to_string(e.expected_positive_roots));
            if (e.zero_multiplicity != e.expected_zero_multiplicity)
                e.problems.push_back("zero multiplicity " + std::to_string(e.zero_multiplicity) + ", expected "
                                     + std::to_string(e.expected_zero_multiplicity));
        }
        if (e.nonreal_deficit == 0 && k < f.n) {
            const UniPoly next = derivs[static_cast<std::size_t>(k) + 1].specialize(Var::Z, z0);
            try {
                e.with_next = check_interlacing(e.poly, next, InterlaceMode::Strict, filter);
                e.with_next->theorem_id = rep.theorem_id;
                e.with_next->label = "k=" + std::to_string(k) + " vs k=" + std::to_string(k + 1);
            } catch (const NotRealRooted& ex) {
                e.problems.push_back(std::string("k+1 polynomial: ") + ex.what());
            }
        }
        const bool has_moving = lag ? e.degree > 0 : e.positive_roots > 0;
        if (e.nonreal_deficit == 0 && has_moving) {
            e.monotonicity = verify_root_monotonicity(derivs[static_cast<std::size_t>(k)], Var::Z, rep.monotonicity_grid,
                                                      {filter, false}, lag ? Direction::Increasing : Direction::Decreasing,
                                                      rep.theorem_id, "k=" + std::to_string(k));
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Laguerre's inequality p'' p - p'^2 < 0.

struct LaguerreInequalityReport {
    std::string theorem_id = "lem-laguerre-ineq";
    std::string label;
    UniPoly poly;
    std::vector<Rational> grid;
    std::vector<Rational> values;
    bool multiple_root_case = false;
    std::optional<std::size_t> witness;

    Outcome outcome() const { return witness ? Outcome::Fail : Outcome::Pass; }
};

/// Exact evaluation on the grid; a zero value is accepted only when p has a repeated root.
inline LaguerreInequalityReport laguerre_inequality_check(const UniPoly& p, const std::vector<Rational>& grid)
{
    const auto iso = detail::isolate_real_rooted(p, "p");
    LaguerreInequalityReport r;
    r.poly = p;
    r.grid = grid;
    r.multiple_root_case = !iso->all_simple();
    const UniPoly d1 = p.derivative();
    const UniPoly d2 = p.derivative(2);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Rational& t = grid[j];
        const Rational v = d2(t) * p(t) - d1(t) * d1(t);
        r.values.push_back(v);
        const bool bad = sgn(v) > 0 || (sgn(v) == 0 && !r.multiple_root_case);
        if (bad && !r.witness)
            r.witness = j;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Charlier discrete orthogonality under the Poisson weight.

struct OrthogonalityReport {
    std::string theorem_id = "thm-charlier-orth";
    int n = 0;
    int m = 0;
    Rational x0;
    Rational tolerance;
    long truncation_N = 0;
    Float partial_sum = 0;
    Rational tail_bound;
    Rational target;
    Float error = 0;
    Outcome verdict = Outcome::Inconclusive;
    std::string note;

    Outcome outcome() const { return verdict; }
};

inline constexpr long kCharlierTruncationCap = 10000;

/**
 * Sum_{z=0}^{N} e^{-x0} x0^z / z! C_n(z) C_m(z) against delta_nm n! / x0^n.
 * The partial sum is exact up to the final multiplication by e^{-x0}. With
 * S = sum |coeffs| of C_n C_m and d = n + m, |C_n C_m (z)| <= S z^d for z >= 1,
 * and once x0/(N+2) (1 + 1/(N+1))^d <= 1/2 the tail beyond N is at most
 * 2 x0^{N+1}/(N+1)! S (N+1)^d (the factor e^{-x0} <= 1 dropped). N grows until
 * that bound is below the tolerance.
 */
inline OrthogonalityReport charlier_orthogonality(int n, int m, const Rational& x0, const Rational& tol)
{
    if (sgn(x0) <= 0)
        throw std::domain_error("Charlier orthogonality needs x0 > 0");
    if (n < 0 || m < 0 || n > 12 || m > 12)
        throw std::out_of_range("Charlier orthogonality is checked for 0 <= n, m <= 12");
    if (sgn(tol) <= 0)
        throw std::invalid_argument("tolerance must be positive");
    OrthogonalityReport r;
    r.n = n;
    r.m = m;
    r.x0 = x0;
    r.tolerance = tol;
    r.target = n == m ? Rational(factorial(static_cast<unsigned long>(n))) / pow_int(x0, static_cast<unsigned long>(n)) : Rational(0);

    const UniPoly prod = charlier(n, x0) * charlier(m, x0);
    const Rational S = prod.abs_coefficient_sum();
    const unsigned long d = static_cast<unsigned long>(n + m);

    Rational sum = 0;
    Rational weight = 1; // x0^z / z!
    for (long z = 0; z <= kCharlierTruncationCap; ++z) {
        if (z > 0)
            weight *= x0 / Rational(z);
        sum += weight * prod(Rational(z));
        const long N = z;
        if (N < 1)
            continue;
        const Rational ratio = x0 / Rational(N + 2) * pow_int(1 + Rational(1) / Rational(N + 1), d);
        if (ratio > make_rational(1, 2))
            continue;
        const Rational next_weight = weight * x0 / Rational(N + 1);
        const Rational tail = 2 * next_weight * S * pow_int(Rational(N + 1), d);
        if (tail > tol)
            continue;
        r.truncation_N = N;
        r.tail_bound = tail;
        r.partial_sum = boost::multiprecision::exp(-to_float(x0)) * to_float(sum);
        r.error = abs(r.partial_sum - to_float(r.target));
        r.verdict = r.error <= to_float(r.tail_bound + tol) ? Outcome::Pass : Outcome::Fail;
        return r;
    }
    r.truncation_N = kCharlierTruncationCap;
    r.verdict = Outcome::Inconclusive;
    r.note = "tail bound not below tolerance within the truncation cap";
    return r;
}

} // namespace dualroots

#endif // DUALROOTS_VERITAS_HPP
