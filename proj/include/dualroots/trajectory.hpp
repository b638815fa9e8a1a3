#ifndef DUALROOTS_TRAJECTORY_HPP
#define DUALROOTS_TRAJECTORY_HPP

#include "interlacing.hpp"
#include "numeric.hpp"
#include "rootlab.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace dualroots {

/// Accepted point of a traced trajectory: all moving roots at one grid x, largest first.
struct TrajectorySample {
    Rational x;
    std::vector<Float> gamma;    ///< gamma_1 > gamma_2 > ...
    std::vector<Float> residual; ///< |reduced G_n(x, gamma_i)|
    Rational step;               ///< integration substep used to reach x (0 at the start)
};

struct TrajectoryEvent {
    std::string kind = "CollisionOrSingularity";
    Rational x; ///< grid point that could not be reached
    std::string message;
};

struct TraceOptions {
    Rational schedule = make_rational(1, 4); ///< substep <= schedule * x^2 near 0
    Rational min_step = make_rational(Integer(1), pow_int(Integer(2), 40));
    int max_newton = 80;
    Float relative_tol = Float("1e-60");   ///< Newton stop: |dz| <= tol (1 + |z|)
    Float residual_tol = Float("1e-50");   ///< accepted residual relative to sum |a_i z^i|
    Float max_polish_shift = Float("1e-6"); ///< polish may move the predictor by at most this (relative)
};

struct TraceResult {
    int n = 0;
    std::vector<TrajectorySample> samples;
    std::optional<TrajectoryEvent> event;
};

namespace detail {

/// Float copy of a BiPoly for repeated evaluation.
class FloatBiPoly {
public:
    explicit FloatBiPoly(const BiPoly& p)
    {
        for (const auto& [e, c] : p.terms())
            terms_.emplace_back(e.first, e.second, to_float(c));
        dx_ = std::max(0, p.x_degree());
        dz_ = std::max(0, p.z_degree());
    }

    Float operator()(const Float& x, const Float& z) const
    {
        std::vector<Float> xp(static_cast<std::size_t>(dx_) + 1, Float(1));
        std::vector<Float> zp(static_cast<std::size_t>(dz_) + 1, Float(1));
        for (int i = 1; i <= dx_; ++i)
            xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * x;
        for (int i = 1; i <= dz_; ++i)
            zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i - 1)] * z;
        Float acc = 0;
        for (const auto& [i, j, c] : terms_)
            acc += c * xp[static_cast<std::size_t>(i)] * zp[static_cast<std::size_t>(j)];
        return acc;
    }

private:
    std::vector<std::tuple<int, int, Float>> terms_;
    int dx_ = 0;
    int dz_ = 0;
};

/// Newton on the exact specialization (coefficients rounded once). Returns nullopt on divergence.
inline std::optional<Float> newton_polish(const std::vector<Float>& coeffs, Float z, const TraceOptions& opt)
{
    for (int it = 0; it < opt.max_newton; ++it) {
        Float v = 0, dv = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            dv = dv * z + v;
            v = v * z + coeffs[k];
        }
        if (dv == 0)
            return std::nullopt;
        const Float dz = v / dv;
        z -= dz;
        if (abs(dz) <= opt.relative_tol * (1 + abs(z)))
            return z;
    }
    return std::nullopt;
}

inline std::pair<Float, Float> residual_and_scale(const std::vector<Float>& coeffs, const Float& z)
{
    Float v = 0, s = 0;
    const Float az = abs(z);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        v = v * z + coeffs[k];
        s = s * az + abs(coeffs[k]);
    }
    return {abs(v), s};
}

} // namespace detail

/**
 * Traces gamma_i(x), i = 1..floor(n/2), from x_start to x_end < 0 on a uniform
 * grid of `steps` intervals. Between grid points an RK4 predictor integrates
 * dz/dx = -d_x G / d_z G for the reduced polynomial with substeps no larger
 * than schedule * x^2; each grid point is then polished by Newton on the exact
 * polynomial. A rejected polish halves the substep; below min_step the trace
 * stops with a CollisionOrSingularity event.
 */
inline TraceResult trace(int n, const Rational& x_start, const Rational& x_end, int steps, const TraceOptions& opt = {})
{
    if (n < 2)
        throw std::invalid_argument("trace needs n >= 2");
    if (steps < 1)
        throw std::invalid_argument("trace needs at least one step");
    if (sgn(x_end) >= 0)
        throw std::domain_error("x_end must be < 0");
    if (x_start < -1 || !(x_start < x_end))
        throw std::domain_error("trace needs -1 <= x_start < x_end < 0");

    const BiPoly& G = family({FamilyKind::GegenbauerTilde, n});
    const detail::FloatBiPoly Gx(G.differentiate(Var::X));
    const detail::FloatBiPoly Gz(G.differentiate(Var::Z));
    const int roots = n / 2;

    auto rhs = [&](const Float& x, const Float& z) { return -Gx(x, z) / Gz(x, z); };
    auto specialized = [&](const Rational& x) {
        std::vector<Float> c;
        const UniPoly p = G.specialize(Var::X, x);
        for (const auto& a : p.coefficients())
            c.push_back(to_float(a));
        return c;
    };

    TraceResult out;
    out.n = n;
    TrajectorySample first;
    first.x = x_start;
    first.step = 0;
    if (x_start == -1) {
        for (int i = 1; i <= roots; ++i)
            first.gamma.push_back(to_float(make_rational(-1, 2) - (i - 1)));
    } else {
        const GammaRoots g = gamma_roots(n, x_start, ten_to_minus(60), GammaOrder::ByValueDescending);
        for (const auto& e : g.values)
            first.gamma.push_back(to_float(e.midpoint()));
    }
    {
        const auto c = specialized(x_start);
        for (const auto& z : first.gamma)
            first.residual.push_back(detail::residual_and_scale(c, z).first);
    }
    out.samples.push_back(first);

    const Rational h = (x_end - x_start) / steps;
    for (int k = 1; k <= steps; ++k) {
        const Rational x0 = x_start + h * (k - 1);
        const Rational x1 = x_start + h * k;
        // x1 is the grid end nearer to 0, where the schedule is tightest
        const Rational cap = opt.schedule * x1 * x1;
        long sub = 1;
        while (h / sub > cap)
            sub *= 2;
        const std::vector<Float> coeffs = specialized(x1);
        const std::vector<Float>& prev = out.samples.back().gamma;

        std::optional<TrajectorySample> accepted;
        while (!accepted) {
            const Rational dx = h / sub;
            if (dx < opt.min_step) {
                out.event = TrajectoryEvent{"CollisionOrSingularity", x1,
                                            "polish rejected down to the minimum step near x = " + to_decimal(x1, 12)};
                return out;
            }
            const Float fdx = to_float(dx);
            TrajectorySample s;
            s.x = x1;
            s.step = dx;
            bool ok = true;
            for (int i = 0; i < roots && ok; ++i) {
                Float z = prev[static_cast<std::size_t>(i)];
                Float x = to_float(x0);
                for (long j = 0; j < sub; ++j) {
                    const Float k1 = rhs(x, z);
                    const Float k2 = rhs(x + fdx / 2, z + fdx / 2 * k1);
                    const Float k3 = rhs(x + fdx / 2, z + fdx / 2 * k2);
                    const Float k4 = rhs(x + fdx, z + fdx * k3);
                    z += fdx / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
                    x = to_float(x0 + dx * (j + 1));
                }
                const auto polished = detail::newton_polish(coeffs, z, opt);
                if (!polished || abs(*polished - z) > opt.max_polish_shift * (1 + abs(z))) {
                    ok = false;
                    break;
                }
                const auto [res, scale] = detail::residual_and_scale(coeffs, *polished);
                if (res > opt.residual_tol * scale) {
                    ok = false;
                    break;
                }
                if (!s.gamma.empty() && !(*polished < s.gamma.back())) {
                    ok = false;
                    break;
                }
                s.gamma.push_back(*polished);
                s.residual.push_back(res);
            }
            if (ok)
                accepted = std::move(s);
            else
                sub *= 2;
        }
        out.samples.push_back(std::move(*accepted));
    }
    return out;
}

// ---------------------------------------------------------------------------

struct DivergenceRow {
    Rational x;
    std::vector<RootEnclosure> gamma; ///< largest first
    Rational gamma_sum;               ///< exact sum of the moving roots from the coefficient identity
    bool sum_certified = false;       ///< sum of enclosures contains gamma_sum
};

struct DivergenceReport {
    int n = 0;
    std::vector<DivergenceRow> rows;
    std::vector<bool> monotone;                 ///< per root: strictly growing as |x| shrinks
    std::vector<RootOrdering> first_violation;  ///< per root: relation at the first non-growing step
    bool passed() const
    {
        for (bool m : monotone)
            if (!m)
                return false;
        for (const auto& r : rows)
            if (!r.sum_certified)
                return false;
        return true;
    }

    Outcome outcome() const { return passed() ? Outcome::Pass : Outcome::Fail; }
};

/**
 * Moving roots at points approaching 0 from one side. Checks growth of every
 * gamma_i and the exact root-sum identity
 * sum gamma_i + sum mu_j = -[z^{n-1}] G_n(x, .) / [z^n] G_n(x, .).
 */
inline DivergenceReport divergence_probe(int n, const std::vector<Rational>& xs)
{
    if (n < 2)
        throw std::invalid_argument("divergence probe needs n >= 2");
    if (xs.empty())
        throw std::invalid_argument("divergence probe needs at least one x");
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (sgn(xs[j]) == 0 || sgn(xs[j]) != sgn(xs[0]))
            throw std::domain_error("probe points must be nonzero and on one side of 0");
        if (j > 0 && !(abs(xs[j]) < abs(xs[j - 1])))
            throw std::invalid_argument("probe points must decrease in magnitude");
    }
    DivergenceReport rep;
    rep.n = n;
    const TildeDecomposition t = gegenbauer_tilde(n);
    Rational mu_sum = 0;
    for (const auto& mu : t.constant_roots)
        mu_sum += mu;

    std::vector<GammaRoots> gs;
    for (const auto& x : xs) {
        gs.push_back(gamma_roots(n, x, default_theorem_tolerance(), GammaOrder::ByValueDescending));
        DivergenceRow row;
        row.x = x;
        row.gamma = gs.back().values;
        const UniPoly g = gegenbauer(n).specialize(Var::X, x);
        row.gamma_sum = -g.coefficient(n - 1) / g.coefficient(n) - mu_sum;
        Rational lo = 0, hi = 0;
        bool exact = true;
        for (const auto& e : row.gamma) {
            lo += e.lo;
            hi += e.hi;
            exact = exact && e.exact();
        }
        row.sum_certified = exact ? lo == row.gamma_sum : (lo < row.gamma_sum && row.gamma_sum <= hi);
        rep.rows.push_back(std::move(row));
    }
    const std::size_t roots = static_cast<std::size_t>(n / 2);
    rep.monotone.assign(roots, true);
    rep.first_violation.assign(roots, RootOrdering::Less);
    for (std::size_t i = 0; i < roots; ++i) {
        for (std::size_t j = 0; j + 1 < gs.size(); ++j) {
            const RootOrdering rel = compare_roots(gs[j].isolation, gs[j].source[i], gs[j + 1].isolation, gs[j + 1].source[i]);
            if (rel != RootOrdering::Less) {
                rep.monotone[i] = false;
                rep.first_violation[i] = rel;
                break;
            }
        }
        for (std::size_t j = 0; j < gs.size(); ++j)
            rep.rows[j].gamma[i] = gs[j].isolation.intervals[gs[j].source[i]];
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cross-check of a trace against certified isolation.

struct TraceCheckReport {
    int n = 0;
    Rational from;
    Rational to;
    int steps = 0;
    TraceResult trace;
    int checked = 0;                       ///< (sample, root) pairs compared
    int outside = 0;                       ///< pairs outside enclosure +- (width + polish slack)
    std::optional<std::size_t> witness;    ///< first offending sample
    bool increasing = true;                ///< every gamma_i strictly increasing along the samples
    Float slack = Float("1e-25");

    Outcome outcome() const
    {
        if (trace.event)
            return Outcome::Inconclusive;
        return outside == 0 && increasing ? Outcome::Pass : Outcome::Fail;
    }
};

/// Traces and compares every accepted sample with gamma_roots at the same x.
inline TraceCheckReport trace_crosscheck(int n, const Rational& from, const Rational& to, int steps)
{
    TraceCheckReport r;
    r.n = n;
    r.from = from;
    r.to = to;
    r.steps = steps;
    r.trace = trace(n, from, to, steps);
    for (std::size_t j = 0; j < r.trace.samples.size(); ++j) {
        const auto& s = r.trace.samples[j];
        const GammaRoots g = gamma_roots(n, s.x, default_theorem_tolerance(), GammaOrder::ByValueDescending);
        bool bad = g.values.size() != s.gamma.size();
        for (std::size_t i = 0; !bad && i < s.gamma.size(); ++i) {
            ++r.checked;
            const Float lo = to_float(g.values[i].lo);
            const Float hi = to_float(g.values[i].hi);
            const Float tol = hi - lo + r.slack;
            if (s.gamma[i] < lo - tol || s.gamma[i] > hi + tol)
                bad = true;
        }
        if (bad) {
            ++r.outside;
            if (!r.witness)
                r.witness = j;
        }
        if (j > 0)
            for (std::size_t i = 0; i < s.gamma.size(); ++i)
                if (!(s.gamma[i] > r.trace.samples[j - 1].gamma[i]))
                    r.increasing = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// CSV output.

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

/// Exact decimal when the denominator has only factors 2 and 5, else rounded to `fallback` places.
inline std::string exact_decimal(const Rational& r, unsigned fallback = 30)
{
    Integer den = r.get_den();
    unsigned twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1)
        return to_decimal(r, fallback);
    return to_decimal(r, std::max(twos, fives));
}

inline void write_trace_csv(std::ostream& os, const TraceResult& t, int gamma_digits = 30)
{
    os << "x,i,gamma,residual,step\r\n";
    for (const auto& s : t.samples)
        for (std::size_t i = 0; i < s.gamma.size(); ++i)
            os << csv_field(exact_decimal(s.x)) << ',' << (i + 1) << ',' << csv_field(float_to_string(s.gamma[i], gamma_digits)) << ','
               << csv_field(float_to_string(s.residual[i], 3)) << ',' << csv_field(exact_decimal(s.step)) << "\r\n";
}

} // namespace dualroots

#endif // DUALROOTS_TRAJECTORY_HPP
