#ifndef DUALROOTS_CLI_APP_HPP
#define DUALROOTS_CLI_APP_HPP

#include <dualroots/errors.hpp>
#include <dualroots/grid.hpp>
#include <dualroots/parallel.hpp>
#include <dualroots/report_json.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace dualroots::cli {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInconclusive = 2, kExitConfig = 3 };

inline int exit_code(Outcome o)
{
    switch (o) {
    case Outcome::Pass: return kExitPass;
    case Outcome::Fail: return kExitFail;
    case Outcome::Inconclusive: return kExitInconclusive;
    }
    return kExitFail;
}

/// Bad flags, bad values, or a checker asked to run outside its domain.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Options shared by every subcommand.
struct GlobalOptions {
    bool allow_large_n = false;
    int jobs = 0; ///< 0: hardware concurrency
    std::string format;
    std::string out;

    int thread_count() const
    {
        if (jobs > 0)
            return jobs;
        return std::max(1u, std::thread::hardware_concurrency());
    }
};

// ---------------------------------------------------------------------------
// Verification tasks.

/// One checker result, already serialized.
struct Result {
    Json report;
    Outcome outcome = Outcome::Pass;
};

using Task = std::function<std::vector<Result>()>;

template <class R>
void push(std::vector<Result>& out, const R& r)
{
    out.push_back({to_json(r), r.outcome()});
}

template <class R>
void push_all(std::vector<Result>& out, const std::vector<R>& rs)
{
    for (const auto& r : rs)
        push(out, r);
}

struct VerifyOptions {
    std::string theorem;
    std::string suite;
    std::optional<int> n;
    std::optional<int> n_min;
    std::optional<int> n_max;
    std::optional<int> m;
    std::vector<std::string> grid;
    std::vector<std::string> z;
    std::vector<std::string> x0;
    std::string tol;
    std::string family;
};

inline const std::vector<std::string>& theorem_ids()
{
    static const std::vector<std::string> ids{
        "def-families",     "cor-laguerrez",      "thm-gegenbauerz", "cor-gegenbauerzmod",
        "thm-dualinterlG",  "cor-dualinterlGmod", "thm-monoroots",   "thm-interlderiv",
        "thm-laguerreD",    "thm-gegenbauerD",    "lem-laguerre-ineq", "thm-charlier-orth",
        "ode-trajectory"};
    return ids;
}

namespace detail {

inline std::vector<int> degrees(const VerifyOptions& v, int lo, int hi)
{
    if (v.n)
        return {*v.n};
    std::vector<int> out;
    for (int n = v.n_min.value_or(lo); n <= v.n_max.value_or(hi); ++n)
        out.push_back(n);
    if (out.empty())
        throw ConfigError("empty degree range");
    return out;
}

inline std::vector<Rational> values_or(const std::vector<std::string>& specs, const std::string& fallback)
{
    return specs.empty() ? parse_grid(fallback) : parse_grids(specs);
}

inline std::vector<Rational> side(const std::vector<Rational>& g, bool negative)
{
    std::vector<Rational> out;
    for (const auto& x : g)
        if (sgn(x) != 0 && (sgn(x) < 0) == negative)
            out.push_back(x);
    return out;
}

inline bool family_selected(const VerifyOptions& v, FamilyKind k)
{
    return v.family.empty() || parse_family(v.family) == k;
}

} // namespace detail

/// The checker tasks behind one theorem id, at the configured or default desk-scale grids.
inline std::vector<Task> theorem_tasks(const std::string& id, const VerifyOptions& v)
{
    using detail::degrees;
    using detail::values_or;
    std::vector<Task> tasks;

    if (id == "def-families") {
        for (int n : degrees(v, 1, 8))
            tasks.push_back([n] {
                std::vector<Result> out;
                push_all(out, exact_identities(n));
                return out;
            });
    } else if (id == "cor-laguerrez") {
        const auto grid = values_or(v.grid, "0,1/2,1,2,5");
        for (int n : degrees(v, 1, 8))
            for (const auto& x : grid)
                tasks.push_back([n, x] {
                    std::vector<Result> out;
                    push(out, verify_realrootedness({FamilyKind::Laguerre, n}, x));
                    return out;
                });
    } else if (id == "thm-gegenbauerz") {
        const auto grid = values_or(v.grid, "support");
        for (int n : degrees(v, 1, 8)) {
            for (const auto& x : grid)
                tasks.push_back([n, x] {
                    std::vector<Result> out;
                    push(out, verify_realrootedness({FamilyKind::Gegenbauer, n}, x));
                    if (n >= 3)
                        push_all(out, verify_gamma_chains(n, x));
                    return out;
                });
            if (n < 2)
                continue;
            for (bool negative : {true, false}) {
                auto part = detail::side(grid, negative);
                if (part.size() >= 2)
                    tasks.push_back([n, part] {
                        std::vector<Result> out;
                        push_all(out, verify_gamma_monotonicity(n, part));
                        return out;
                    });
            }
        }
    } else if (id == "cor-gegenbauerzmod") {
        const auto grid = values_or(v.grid, "support");
        for (int n : degrees(v, 1, 8))
            for (const auto& x : grid)
                tasks.push_back([n, x] {
                    std::vector<Result> out;
                    push(out, verify_realrootedness({FamilyKind::GegenbauerModified, n}, x));
                    return out;
                });
    } else if (id == "thm-dualinterlG" || id == "cor-dualinterlGmod") {
        const auto grid = values_or(v.grid, "support");
        for (int n : degrees(v, 1, 8))
            for (const auto& x : grid)
                tasks.push_back([n, x, id] {
                    std::vector<Result> out;
                    for (const auto& r : verify_dual_interlacing(n, x))
                        if (r.theorem_id == id)
                            push(out, r);
                    return out;
                });
    } else if (id == "thm-monoroots") {
        for (int n : degrees(v, 1, 8)) {
            if (detail::family_selected(v, FamilyKind::Laguerre)) {
                const auto grid = values_or(v.grid.empty() ? v.z : v.grid, "0,1/2,1,2");
                tasks.push_back([n, grid] {
                    std::vector<Result> out;
                    push_all(out, verify_root_monotonicity({FamilyKind::Laguerre, n}, Var::Z, grid, {}, Direction::Increasing));
                    return out;
                });
            }
            if (detail::family_selected(v, FamilyKind::GegenbauerModified)) {
                const auto grid = values_or(v.grid.empty() ? v.z : v.grid, "0,1/2,1");
                tasks.push_back([n, grid] {
                    std::vector<Result> out;
                    push_all(out, verify_root_monotonicity({FamilyKind::GegenbauerModified, n}, Var::Z, grid,
                                                           {RootFilter::Positive, false}, Direction::Decreasing));
                    return out;
                });
            }
        }
    } else if (id == "thm-interlderiv") {
        const std::pair<FamilyKind, const char*> plan[] = {{FamilyKind::Laguerre, "0,1/2,1"},
                                                           {FamilyKind::Gegenbauer, "1/2,1"},
                                                           {FamilyKind::GegenbauerModified, "0,1/2,1"}};
        for (int n : degrees(v, 1, 8))
            for (const auto& [kind, fallback] : plan) {
                if (!detail::family_selected(v, kind))
                    continue;
                for (const auto& z0 : values_or(v.z, fallback))
                    tasks.push_back([kind = kind, n, z0] {
                        std::vector<Result> out;
                        push_all(out, verify_classical_x_interlacing({kind, n}, z0));
                        return out;
                    });
            }
    } else if (id == "thm-laguerreD" || id == "thm-gegenbauerD") {
        const bool lag = id == "thm-laguerreD";
        const FamilyKind kind = lag ? FamilyKind::Laguerre : FamilyKind::GegenbauerModified;
        for (int n : degrees(v, 1, 8))
            for (const auto& z0 : values_or(v.z, lag ? "0,1" : "0,1/2,1"))
                tasks.push_back([kind, n, z0] {
                    std::vector<Result> out;
                    push(out, verify_derivative_family({kind, n}, z0));
                    return out;
                });
    } else if (id == "lem-laguerre-ineq") {
        const auto grid = values_or(v.grid.empty() ? v.z : v.grid, "-7/2,-1/3,0,1/2,3");
        for (int n : degrees(v, 1, 8))
            for (const auto& x0 : values_or(v.x0, "0,1,2"))
                tasks.push_back([n, x0, grid] {
                    std::vector<Result> out;
                    auto r = laguerre_inequality_check(laguerre(n).specialize(Var::X, x0), grid);
                    r.label = family_label({FamilyKind::Laguerre, n}) + " at x0 = " + to_string(x0);
                    push(out, r);
                    return out;
                });
    } else if (id == "thm-charlier-orth") {
        const Rational tol = v.tol.empty() ? ten_to_minus(20) : parse_rational(v.tol);
        if (sgn(tol) <= 0)
            throw ConfigError("tolerance must be > 0");
        const std::vector<int> ns = degrees(v, 0, 6);
        const std::vector<int> ms = v.m ? std::vector<int>{*v.m} : (v.n ? ns : degrees(VerifyOptions{}, 0, 6));
        for (const auto& x0 : values_or(v.x0, "1,2,5/2"))
            for (int n : ns)
                for (int m : ms)
                    tasks.push_back([n, m, x0, tol] {
                        std::vector<Result> out;
                        push(out, charlier_orthogonality(n, m, x0, tol));
                        return out;
                    });
    } else if (id == "ode-trajectory") {
        for (int n : degrees(v, 2, 6))
            tasks.push_back([n] {
                std::vector<Result> out;
                push(out, trace_crosscheck(n, -1, make_rational(-1, 16), 64));
                return out;
            });
        for (int n : degrees(v, 2, 8))
            tasks.push_back([n] {
                std::vector<Result> out;
                std::vector<Rational> xs;
                for (int k = 1; k <= 6; ++k)
                    xs.push_back(make_rational(Integer(-1), pow_int(Integer(2), static_cast<unsigned long>(k))));
                push(out, divergence_probe(n, xs));
                return out;
            });
    } else {
        throw ConfigError("unknown theorem id '" + id + "'");
    }
    return tasks;
}

/// Runs tasks on the pool and merges results in task order.
inline std::vector<Result> run_tasks(const std::vector<Task>& tasks, int jobs)
{
    auto chunks = parallel_map(
        tasks,
        [](const Task& t) {
            try {
                return t();
            } catch (const TheoremViolation& e) {
                Json j;
                j["theorem_id"] = e.theorem();
                j["kind"] = "violation";
                j["verdict"] = "Fail";
                j["outcome"] = "fail";
                j["witnesses"] = Json::array({{{"problem", e.what()}}});
                return std::vector<Result>{{std::move(j), Outcome::Fail}};
            } catch (const std::logic_error& e) {
                // invalid_argument, domain_error, out_of_range: the request is outside a checker's domain
                throw ConfigError(e.what());
            }
        },
        jobs);
    std::vector<Result> out;
    for (auto& c : chunks)
        for (auto& r : c)
            out.push_back(std::move(r));
    return out;
}

inline Json verify_document(const std::string& scope, const std::vector<Result>& results, Outcome& overall)
{
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["scope"] = scope;
    Json reports = Json::array();
    int pass = 0;
    int fail = 0;
    int inconclusive = 0;
    overall = Outcome::Pass;
    for (const auto& r : results) {
        reports.push_back(r.report);
        overall = combine(overall, r.outcome);
        (r.outcome == Outcome::Pass ? pass : r.outcome == Outcome::Fail ? fail : inconclusive) += 1;
    }
    doc["reports"] = std::move(reports);
    doc["summary"] = {{"total", results.size()}, {"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}};
    doc["outcome"] = outcome_name(overall);
    return doc;
}

// ---------------------------------------------------------------------------
// Output helpers.

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw ConfigError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }

    std::ostream& os() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

inline std::string pick_format(const GlobalOptions& g, const std::string& fallback, std::initializer_list<const char*> allowed)
{
    const std::string f = g.format.empty() ? fallback : g.format;
    for (const char* a : allowed)
        if (f == a)
            return f;
    throw ConfigError("format '" + f + "' is not available for this command");
}

inline Json bipoly_json(const BiPoly& p)
{
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"x", e.first}, {"z", e.second}, {"c", to_string(c)}});
    return {{"text", p.to_string_grouped()}, {"terms", std::move(terms)}};
}

inline Json unipoly_json(const UniPoly& p)
{
    Json coeffs = Json::array();
    for (const auto& c : p.coefficients())
        coeffs.push_back(to_string(c));
    return {{"variable", p.var() == Var::X ? "x" : "z"}, {"text", p.to_string()}, {"degree", p.degree()}, {"coefficients", std::move(coeffs)}};
}

inline std::optional<Rational> opt_rational(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    return parse_rational(s);
}

// ---------------------------------------------------------------------------
// Subcommands.

struct GenOptions {
    std::string family;
    int n = -1;
    std::string x0;
    std::string z0;
    int k = 0;
};

inline int cmd_gen(const GenOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const FamilyKind kind = parse_family(o.family);
    const std::string format = pick_format(g, "text", {"text", "json"});
    const auto x0 = opt_rational(o.x0);
    const auto z0 = opt_rational(o.z0);
    if (o.n < 0)
        throw ConfigError("--n must be >= 0");
    if (o.k < 0)
        throw ConfigError("--k must be >= 0");
    check_degree_limit(o.n, g.allow_large_n);

    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "gen";
    doc["family"] = family_name(kind);
    doc["n"] = o.n;
    if (o.k > 0)
        doc["k"] = o.k;
    std::vector<std::string> lines;

    if (kind == FamilyKind::Charlier) {
        if (!x0)
            throw ConfigError("charlier needs --x0");
        if (z0)
            throw ConfigError("charlier is a polynomial in z only; drop --z0");
        const UniPoly c = charlier(o.n, *x0).derivative(o.k);
        doc["x0"] = to_string(*x0);
        doc["polynomial"] = unipoly_json(c);
        lines.push_back(c.to_string());
    } else {
        if (x0 && z0)
            throw ConfigError("give at most one of --x0 and --z0");
        BiPoly p;
        if (kind == FamilyKind::GegenbauerTilde) {
            const TildeDecomposition t = gegenbauer_tilde(o.n);
            Json roots = Json::array();
            std::string text;
            for (const auto& r : t.constant_roots) {
                roots.push_back(to_string(r));
                text += (text.empty() ? "" : ", ") + to_string(r);
            }
            doc["constant_roots"] = std::move(roots);
            lines.push_back("constant roots: [" + text + "]");
            p = t.reduced;
        } else {
            p = family({kind, o.n}, g.allow_large_n);
        }
        p = p.differentiate(Var::Z, o.k);
        const std::string prefix = kind == FamilyKind::GegenbauerTilde ? "reduced: " : "";
        if (x0 || z0) {
            const Var fixed = x0 ? Var::X : Var::Z;
            const UniPoly u = p.specialize(fixed, x0 ? *x0 : *z0);
            doc[x0 ? "x0" : "z0"] = to_string(x0 ? *x0 : *z0);
            doc["polynomial"] = unipoly_json(u);
            lines.push_back(prefix + u.to_string());
        } else {
            doc["polynomial"] = bipoly_json(p);
            lines.push_back(prefix + p.to_string_grouped());
        }
    }

    Sink sink(g.out, out);
    if (format == "json")
        sink.os() << doc.dump(2) << "\n";
    else
        for (const auto& l : lines)
            sink.os() << l << "\n";
    return kExitPass;
}

struct RootsOptions {
    std::string family;
    int n = -1;
    std::string x0;
    std::string z0;
    int k = 0;
    std::string coeffs;
    bool gamma = false;
    std::string x;
    std::string order = "modulus";
    std::string tol;
};

inline std::string enclosure_text(const RootEnclosure& e, int mult)
{
    std::string s = e.exact() ? to_string(e.lo) + " (exact)"
                              : "(" + to_decimal_directed(e.lo, 20, false) + ", " + to_decimal_directed(e.hi, 20, true) + "]";
    if (mult > 1)
        s += " x" + std::to_string(mult);
    return s;
}

inline int cmd_roots(const RootsOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const std::string format = pick_format(g, "text", {"text", "json"});
    const Rational tol = o.tol.empty() ? default_output_tolerance() : parse_rational(o.tol);
    if (sgn(tol) <= 0)
        throw ConfigError("tolerance must be > 0");
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "roots";
    doc["tolerance"] = to_string(tol);
    std::ostringstream text;

    if (o.gamma) {
        if (o.n < 2 || o.x.empty())
            throw ConfigError("--gamma needs --n >= 2 and --x");
        GammaOrder order;
        if (o.order == "modulus")
            order = GammaOrder::ByModulus;
        else if (o.order == "value")
            order = GammaOrder::ByValueDescending;
        else
            throw ConfigError("--order must be modulus or value");
        check_degree_limit(o.n, g.allow_large_n);
        const GammaRoots gr = gamma_roots(o.n, parse_rational(o.x), tol, order);
        doc["n"] = gr.n;
        doc["x"] = to_string(gr.x);
        doc["order"] = gamma_order_name(gr.order);
        doc["complete"] = gr.complete;
        doc["tie_flagged"] = gr.tie_flagged;
        Json vals = Json::array();
        text << "gamma roots n=" << gr.n << " x=" << to_string(gr.x) << " order=" << gamma_order_name(gr.order) << "\n";
        for (std::size_t i = 0; i < gr.values.size(); ++i) {
            vals.push_back(enclosure_json(gr.values[i]));
            text << "  gamma_" << i + 1 << " in " << enclosure_text(gr.values[i], 1) << "\n";
        }
        doc["gamma"] = std::move(vals);
        if (!gr.complete)
            text << "  incomplete: fewer than floor(n/2) real roots\n";
    } else {
        UniPoly p;
        if (!o.coeffs.empty()) {
            std::vector<Rational> cs;
            for (const auto& c : ::dualroots::detail::split(o.coeffs, ','))
                cs.push_back(parse_rational(c));
            p = UniPoly(cs, Var::Z);
            doc["source"] = "coefficients";
        } else {
            if (o.family.empty() || o.n < 0)
                throw ConfigError("give --coeffs, --gamma, or --family with --n");
            const FamilyKind kind = parse_family(o.family);
            const auto x0 = opt_rational(o.x0);
            const auto z0 = opt_rational(o.z0);
            check_degree_limit(o.n, g.allow_large_n);
            if (kind == FamilyKind::Charlier) {
                if (!x0)
                    throw ConfigError("charlier needs --x0");
                p = charlier(o.n, *x0).derivative(o.k);
            } else {
                if (x0.has_value() == z0.has_value())
                    throw ConfigError("give exactly one of --x0 (roots in z) and --z0 (roots in x)");
                const BiPoly P = family({kind, o.n}, g.allow_large_n).differentiate(Var::Z, o.k);
                p = x0 ? P.specialize(Var::X, *x0) : P.specialize(Var::Z, *z0);
            }
            doc["source"] = {{"family", family_name(kind)}, {"n", o.n}, {"k", o.k}, {"x0", o.x0}, {"z0", o.z0}};
        }
        if (p.is_zero())
            throw ConfigError("the polynomial is identically zero");
        RootIsolation iso = isolate(p);
        refine_all(iso, tol);
        doc["polynomial"] = unipoly_json(p);
        doc["isolation"] = isolation_json(iso);
        text << "polynomial: " << p.to_string() << "\n";
        text << "degree " << iso.degree << ", real roots " << iso.real_with_multiplicity() << " (" << iso.real_count
             << " distinct), non-real " << iso.nonreal_deficit << "\n";
        for (std::size_t i = 0; i < iso.intervals.size(); ++i)
            text << "  " << enclosure_text(iso.intervals[i], iso.multiplicities[i]) << "\n";
    }

    Sink sink(g.out, out);
    if (format == "json")
        sink.os() << doc.dump(2) << "\n";
    else
        sink.os() << text.str();
    return kExitPass;
}

inline int cmd_verify(const VerifyOptions& v, const GlobalOptions& g, std::ostream& out)
{
    const std::string format = pick_format(g, "json", {"json", "text"});
    if (v.theorem.empty() == v.suite.empty())
        throw ConfigError("give exactly one of --theorem and --suite");
    std::vector<Task> tasks;
    std::string scope;
    if (!v.suite.empty()) {
        if (v.suite != "paper")
            throw ConfigError("unknown suite '" + v.suite + "'");
        scope = "suite:paper";
        for (const auto& id : theorem_ids()) {
            auto t = theorem_tasks(id, VerifyOptions{});
            tasks.insert(tasks.end(), t.begin(), t.end());
        }
    } else {
        scope = v.theorem;
        tasks = theorem_tasks(v.theorem, v);
    }
    const auto results = run_tasks(tasks, g.thread_count());
    Outcome overall;
    const Json doc = verify_document(scope, results, overall);

    Sink sink(g.out, out);
    if (format == "json") {
        sink.os() << doc.dump(2) << "\n";
    } else {
        for (const auto& r : doc["reports"]) {
            sink.os() << r["outcome"].get<std::string>() << "  " << r["theorem_id"].get<std::string>() << "  "
                      << r["kind"].get<std::string>();
            if (r.contains("label"))
                sink.os() << "  " << r["label"].get<std::string>();
            if (r.contains("inputs"))
                sink.os() << "  " << r["inputs"].dump();
            sink.os() << "\n";
        }
        const auto& s = doc["summary"];
        sink.os() << "total " << s["total"] << ", pass " << s["pass"] << ", fail " << s["fail"] << ", inconclusive "
                  << s["inconclusive"] << ": " << doc["outcome"].get<std::string>() << "\n";
    }
    return exit_code(overall);
}

struct ScanOptions {
    std::string family = "gegenbauer";
    int n_min = 1;
    int n_max = 24;
    std::vector<std::string> grid;
};

inline int cmd_scan(const ScanOptions& o, const GlobalOptions& g, std::ostream& out)
{
    const std::string format = pick_format(g, "text", {"text", "json", "csv"});
    const FamilyKind kind = parse_family(o.family);
    if (kind == FamilyKind::Charlier || kind == FamilyKind::GegenbauerTilde)
        throw ConfigError("scan covers laguerre, gegenbauer, gegenbauer-modified");
    if (o.n_min < 1 || o.n_max < o.n_min)
        throw ConfigError("need 1 <= --n-min <= --n-max");
    check_degree_limit(o.n_max, g.allow_large_n);
    const auto grid = o.grid.empty() ? parse_grid(kind == FamilyKind::Laguerre ? "-2,-1,-1/2" : "5/4,3/2,2,3") : parse_grids(o.grid);

    struct Row {
        int n;
        DeficitEntry e;
    };
    std::vector<FamilyId> ids;
    for (int n = o.n_min; n <= o.n_max; ++n)
        ids.push_back({kind, n});
    // warm the cache in order so parallel scans only read it
    for (const auto& id : ids)
        family(id, g.allow_large_n);
    std::vector<std::pair<int, Rational>> points;
    for (const auto& id : ids)
        for (const auto& x : grid)
            points.push_back({id.n, x});
    const auto entries = parallel_map(
        points,
        [&](const std::pair<int, Rational>& pt) {
            DeficitEntry e = deficit_of(family({kind, pt.first}, true).specialize(Var::X, pt.second));
            e.x = pt.second;
            e.inside_support = inside_support(kind, pt.second);
            return Row{pt.first, e};
        },
        g.thread_count());

    std::optional<Row> first_outside;
    std::optional<Row> first_inside;
    for (const auto& r : entries) {
        if (r.e.nonreal_deficit <= 0)
            continue;
        auto& slot = r.e.inside_support ? first_inside : first_outside;
        if (!slot || r.n < slot->n || (r.n == slot->n && r.e.x < slot->e.x))
            slot = r;
    }
    const Outcome outcome = first_inside ? Outcome::Fail : Outcome::Pass;

    Sink sink(g.out, out);
    if (format == "json") {
        Json doc;
        doc["schema"] = kSchemaVersion;
        doc["command"] = "scan";
        doc["family"] = family_name(kind);
        Json rows = Json::array();
        for (const auto& r : entries)
            rows.push_back({{"n", r.n}, {"x", to_string(r.e.x)}, {"inside_support", r.e.inside_support}, {"degree", r.e.degree},
                            {"real_with_multiplicity", r.e.real_with_multiplicity}, {"nonreal_deficit", r.e.nonreal_deficit},
                            {"all_simple", r.e.all_simple}, {"zero_polynomial", r.e.zero_polynomial}});
        doc["rows"] = std::move(rows);
        doc["first_counterexample_outside_support"] =
            first_outside ? Json{{"n", first_outside->n}, {"x", to_string(first_outside->e.x)}, {"nonreal_deficit", first_outside->e.nonreal_deficit}}
                          : Json(nullptr);
        if (first_inside)
            doc["violation_inside_support"] = {{"n", first_inside->n}, {"x", to_string(first_inside->e.x)}};
        doc["outcome"] = outcome_name(outcome);
        sink.os() << doc.dump(2) << "\n";
    } else if (format == "csv") {
        sink.os() << "n,x,inside_support,degree,real_with_multiplicity,nonreal_deficit,all_simple\r\n";
        for (const auto& r : entries)
            sink.os() << r.n << "," << csv_field(to_string(r.e.x)) << "," << (r.e.inside_support ? "true" : "false") << ","
                      << r.e.degree << "," << r.e.real_with_multiplicity << "," << r.e.nonreal_deficit << ","
                      << (r.e.all_simple ? "true" : "false") << "\r\n";
    } else {
        sink.os() << "n\tx\tsupport\tdegree\treal\tdeficit\n";
        for (const auto& r : entries)
            sink.os() << r.n << "\t" << to_string(r.e.x) << "\t" << (r.e.inside_support ? "in" : "out") << "\t" << r.e.degree
                      << "\t" << r.e.real_with_multiplicity << "\t" << r.e.nonreal_deficit << "\n";
        if (first_outside)
            sink.os() << "first counterexample outside support: n=" << first_outside->n << " x=" << to_string(first_outside->e.x)
                      << " deficit=" << first_outside->e.nonreal_deficit << "\n";
        else
            sink.os() << "none found at this scale\n";
        if (first_inside)
            sink.os() << "VIOLATION inside support: n=" << first_inside->n << " x=" << to_string(first_inside->e.x) << "\n";
    }
    return exit_code(outcome);
}

struct TraceOptionsCli {
    int n = -1;
    std::string from = "-1";
    std::string to;
    int steps = 64;
    bool probe = false;
    std::vector<std::string> grid;
};

inline int cmd_trace(const TraceOptionsCli& o, const GlobalOptions& g, std::ostream& out)
{
    if (o.n < 2)
        throw ConfigError("--n must be >= 2");
    check_degree_limit(o.n, g.allow_large_n);
    if (o.probe) {
        const std::string format = pick_format(g, "json", {"json"});
        std::vector<Rational> xs;
        if (o.grid.empty()) {
            for (int k = 1; k <= 6; ++k)
                xs.push_back(make_rational(Integer(-1), pow_int(Integer(2), static_cast<unsigned long>(k))));
        } else {
            // ordered toward 0: decreasing magnitude
            xs = parse_grids(o.grid);
            std::sort(xs.begin(), xs.end(), [](const Rational& a, const Rational& b) { return abs(a) > abs(b); });
        }
        const DivergenceReport r = divergence_probe(o.n, xs);
        Json doc;
        doc["schema"] = kSchemaVersion;
        doc["command"] = "trace";
        doc["probe"] = to_json(r);
        doc["outcome"] = outcome_name(r.outcome());
        Sink sink(g.out, out);
        sink.os() << doc.dump(2) << "\n";
        return exit_code(r.outcome());
    }
    const std::string format = pick_format(g, "csv", {"csv", "json"});
    if (o.to.empty())
        throw ConfigError("--to is required");
    const TraceResult t = trace(o.n, parse_rational(o.from), parse_rational(o.to), o.steps);
    Sink sink(g.out, out);
    if (format == "csv") {
        write_trace_csv(sink.os(), t);
    } else {
        Json doc;
        doc["schema"] = kSchemaVersion;
        doc["command"] = "trace";
        doc["n"] = t.n;
        Json samples = Json::array();
        for (const auto& s : t.samples) {
            Json gam = Json::array();
            Json res = Json::array();
            for (std::size_t i = 0; i < s.gamma.size(); ++i) {
                gam.push_back(float_to_string(s.gamma[i], 30));
                res.push_back(float_to_string(s.residual[i], 6));
            }
            samples.push_back({{"x", to_string(s.x)}, {"gamma", std::move(gam)}, {"residual", std::move(res)},
                               {"step", to_string(s.step)}});
        }
        doc["samples"] = std::move(samples);
        doc["event"] = t.event ? Json{{"kind", t.event->kind}, {"x", to_string(t.event->x)}, {"message", t.event->message}} : Json(nullptr);
        sink.os() << doc.dump(2) << "\n";
    }
    return t.event ? kExitInconclusive : kExitPass;
}

// ---------------------------------------------------------------------------

/// Full command line: parse, dispatch, map errors to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact construction and root verification for parametric orthogonal polynomial families", "dualroots"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_flag("--allow-large-n", g.allow_large_n, "allow degrees above the default cap");
    app.add_option("--jobs,-j", g.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--format", g.format, "output format: text, json or csv");
    app.add_option("--out,-o", g.out, "write output to this file");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "print a family polynomial");
    gen_cmd->add_option("--family", gen.family, "laguerre, gegenbauer, gegenbauer-modified, gegenbauer-tilde, charlier")->required();
    gen_cmd->add_option("--n", gen.n, "degree")->required();
    gen_cmd->add_option("--x0", gen.x0, "specialize x (charlier: the parameter)");
    gen_cmd->add_option("--z0", gen.z0, "specialize z");
    gen_cmd->add_option("--k", gen.k, "order of the z-derivative");

    RootsOptions roots;
    auto* roots_cmd = app.add_subcommand("roots", "isolate real roots");
    roots_cmd->add_option("--family", roots.family);
    roots_cmd->add_option("--n", roots.n);
    roots_cmd->add_option("--x0", roots.x0, "fix x, roots in z");
    roots_cmd->add_option("--z0", roots.z0, "fix z, roots in x");
    roots_cmd->add_option("--k", roots.k, "order of the z-derivative");
    roots_cmd->add_option("--coeffs", roots.coeffs, "ascending coefficients c0,c1,...");
    roots_cmd->add_flag("--gamma", roots.gamma, "moving roots of the reduced Gegenbauer polynomial");
    roots_cmd->add_option("--x", roots.x, "x for --gamma");
    roots_cmd->add_option("--order", roots.order, "modulus or value");
    roots_cmd->add_option("--tol", roots.tol, "enclosure width");

    VerifyOptions ver;
    auto* ver_cmd = app.add_subcommand("verify", "run theorem checkers");
    ver_cmd->add_option("--theorem", ver.theorem, "theorem id");
    ver_cmd->add_option("--suite", ver.suite, "named suite (paper)");
    ver_cmd->add_option("--n", ver.n);
    ver_cmd->add_option("--n-min", ver.n_min);
    ver_cmd->add_option("--n-max", ver.n_max);
    ver_cmd->add_option("--m", ver.m);
    ver_cmd->add_option("--grid", ver.grid, "grid spec, repeatable")->take_all();
    ver_cmd->add_option("--z", ver.z, "z values")->take_all();
    ver_cmd->add_option("--x0", ver.x0, "x0 values")->take_all();
    ver_cmd->add_option("--tol", ver.tol);
    ver_cmd->add_option("--family", ver.family);

    ScanOptions scan;
    auto* scan_cmd = app.add_subcommand("scan", "non-real root deficits over n and x");
    scan_cmd->add_option("--family", scan.family);
    scan_cmd->add_option("--n-min", scan.n_min);
    scan_cmd->add_option("--n-max", scan.n_max);
    scan_cmd->add_option("--grid", scan.grid)->take_all();

    TraceOptionsCli tr;
    auto* trace_cmd = app.add_subcommand("trace", "follow the moving roots in x");
    trace_cmd->add_option("--n", tr.n)->required();
    trace_cmd->add_option("--from", tr.from);
    trace_cmd->add_option("--to", tr.to);
    trace_cmd->add_option("--steps", tr.steps);
    trace_cmd->add_flag("--probe", tr.probe, "divergence probe toward x = 0");
    trace_cmd->add_option("--grid", tr.grid, "probe points")->take_all();

    for (auto* sub : {gen_cmd, roots_cmd, ver_cmd, scan_cmd, trace_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitConfig;
    }

    allow_large_degrees(g.allow_large_n);
    try {
        if (*gen_cmd)
            return cmd_gen(gen, g, out);
        if (*roots_cmd)
            return cmd_roots(roots, g, out);
        if (*ver_cmd)
            return cmd_verify(ver, g, out);
        if (*scan_cmd)
            return cmd_scan(scan, g, out);
        return cmd_trace(tr, g, out);
    } catch (const TheoremViolation& e) {
        err << "theorem violation: " << e.what() << "\n";
        return kExitFail;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitFail;
    }
}

} // namespace dualroots::cli

#endif // DUALROOTS_CLI_APP_HPP
