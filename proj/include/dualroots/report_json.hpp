#ifndef DUALROOTS_REPORT_JSON_HPP
#define DUALROOTS_REPORT_JSON_HPP

#include "trajectory.hpp"
#include "veritas.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dualroots {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
/// Decimal places for printed enclosure endpoints (rounded outward).
inline constexpr unsigned kEnclosureDigits = 36;

inline Json enclosure_json(const RootEnclosure& e, int multiplicity = 0)
{
    Json j;
    j["lo"] = to_decimal_directed(e.lo, kEnclosureDigits, false);
    j["hi"] = to_decimal_directed(e.hi, kEnclosureDigits, true);
    j["width"] = to_scientific(e.width(), 3);
    j["exact"] = e.exact();
    j["lo_exact"] = to_string(e.lo);
    j["hi_exact"] = to_string(e.hi);
    if (multiplicity > 0)
        j["multiplicity"] = multiplicity;
    return j;
}

inline Json isolation_json(const RootIsolation& iso)
{
    Json roots = Json::array();
    for (std::size_t i = 0; i < iso.intervals.size(); ++i)
        roots.push_back(enclosure_json(iso.intervals[i], iso.multiplicities[i]));
    Json j;
    j["polynomial"] = iso.poly.to_string();
    j["degree"] = iso.degree;
    j["real_count"] = iso.real_count;
    j["nonreal_deficit"] = iso.nonreal_deficit;
    j["all_simple"] = iso.all_simple();
    j["roots"] = std::move(roots);
    return j;
}

inline Json inputs_json(const std::map<std::string, std::string>& inputs)
{
    Json j = Json::object();
    for (const auto& [k, v] : inputs)
        j[k] = v;
    return j;
}

inline Json to_json(const IdentityReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "identity";
    j["inputs"] = {{"identity", r.name}, {"n", std::to_string(r.n)}};
    j["verdict"] = r.passed() ? "Pass" : "Fail";
    j["outcome"] = outcome_name(r.outcome());
    j["witnesses"] = Json::array();
    if (!r.passed())
        j["witnesses"].push_back({{"residue", r.residue.to_string()}});
    return j;
}

inline Json to_json(const RealRootednessReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "realrootedness";
    j["inputs"] = {{"family", std::string(family_name(r.family.kind))}, {"n", std::to_string(r.family.n)}, {"x0", to_string(r.x0)}};
    j["verdict"] = r.problem.empty() ? "Pass" : "Fail";
    j["outcome"] = outcome_name(r.outcome());
    j["degree"] = r.degree;
    j["distinct_real"] = r.distinct_real;
    j["real_with_multiplicity"] = r.real_with_multiplicity;
    j["nonreal_deficit"] = r.nonreal_deficit;
    j["all_simple"] = r.all_simple;
    j["max_multiplicity"] = r.max_multiplicity;
    if (r.moving_roots >= 0) {
        j["moving_roots"] = r.moving_roots;
        j["expected_moving_roots"] = r.expected_moving_roots;
    }
    j["witnesses"] = Json::array();
    if (!r.problem.empty())
        j["witnesses"].push_back({{"problem", r.problem}});
    return j;
}

inline Json to_json(const InterlacingReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "interlacing";
    j["label"] = r.label;
    j["inputs"] = inputs_json(r.inputs);
    j["mode"] = r.mode == InterlaceMode::Strict ? "strict" : "weak";
    if (r.filter == RootFilter::Positive)
        j["roots"] = "positive";
    j["verdict"] = interlace_verdict_name(r.verdict);
    j["outcome"] = outcome_name(r.outcome());
    j["witnesses"] = Json::array();
    if (r.witness) {
        j["witnesses"].push_back({{"left", r.witness->left},
                                  {"right", r.witness->right},
                                  {"relation", ordering_name(r.witness->relation)},
                                  {"left_enclosure", enclosure_json(r.witness->left_enclosure)},
                                  {"right_enclosure", enclosure_json(r.witness->right_enclosure)}});
    }
    if (r.verdict != InterlaceVerdict::DegenerateAtZero && r.p_iso) {
        j["chain_starts_with"] = r.p_first ? "p" : "q";
        Json shared = Json::array();
        for (const auto& e : r.shared_roots)
            shared.push_back(enclosure_json(e));
        j["shared_roots"] = std::move(shared);
        if (r.p_iso)
            j["p"] = isolation_json(*r.p_iso);
        if (r.q_iso)
            j["q"] = isolation_json(*r.q_iso);
    }
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

inline Json to_json(const MonotonicityReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "monotonicity";
    j["label"] = r.label;
    j["inputs"] = inputs_json(r.inputs);
    j["root_index"] = r.root_index;
    j["expected"] = direction_name(r.expected);
    j["verdict"] = monotonicity_verdict_name(r.verdict);
    j["outcome"] = outcome_name(r.outcome());
    Json grid = Json::array();
    for (const auto& g : r.grid)
        grid.push_back(to_string(g));
    j["grid"] = std::move(grid);
    Json values = Json::array();
    for (const auto& v : r.values)
        values.push_back(enclosure_json(v));
    j["enclosures"] = std::move(values);
    j["witnesses"] = Json::array();
    if (r.witness && !r.passed())
        j["witnesses"].push_back({{"grid_step", *r.witness},
                                  {"from", to_string(r.grid[*r.witness])},
                                  {"to", to_string(r.grid[*r.witness + 1])}});
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

inline Json to_json(const DerivativeFamilyReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "derivative-family";
    j["inputs"] = {{"family", std::string(family_name(r.family.kind))}, {"n", std::to_string(r.family.n)}, {"z0", to_string(r.z0)}};
    j["outcome"] = outcome_name(r.outcome());
    j["verdict"] = r.outcome() == Outcome::Pass ? "Pass" : (r.outcome() == Outcome::Fail ? "Fail" : "Inconclusive");
    Json entries = Json::array();
    Json witnesses = Json::array();
    for (const auto& e : r.entries) {
        Json je;
        je["k"] = e.k;
        je["polynomial"] = e.poly.to_string();
        je["degree"] = e.degree;
        je["expected_degree"] = e.expected_degree;
        je["nonreal_deficit"] = e.nonreal_deficit;
        je["positive_roots"] = e.positive_roots;
        if (e.expected_positive_roots >= 0)
            je["expected_positive_roots"] = e.expected_positive_roots;
        je["zero_multiplicity"] = e.zero_multiplicity;
        if (e.expected_zero_multiplicity >= 0)
            je["expected_zero_multiplicity"] = e.expected_zero_multiplicity;
        if (e.with_next)
            je["interlacing_with_next"] = to_json(*e.with_next);
        Json mono = Json::array();
        for (const auto& m : e.monotonicity)
            mono.push_back(to_json(m));
        je["monotonicity"] = std::move(mono);
        je["outcome"] = outcome_name(e.outcome());
        for (const auto& p : e.problems)
            witnesses.push_back({{"k", e.k}, {"problem", p}, {"polynomial", e.poly.to_string()}});
        entries.push_back(std::move(je));
    }
    j["witnesses"] = std::move(witnesses);
    j["entries"] = std::move(entries);
    return j;
}

inline Json to_json(const LaguerreInequalityReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "laguerre-inequality";
    j["label"] = r.label;
    j["inputs"] = {{"polynomial", r.poly.to_string()}};
    j["verdict"] = r.witness ? "Fail" : "Pass";
    j["outcome"] = outcome_name(r.outcome());
    j["multiple_root_case"] = r.multiple_root_case;
    Json pts = Json::array();
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        pts.push_back({{"z", to_string(r.grid[i])}, {"value", to_string(r.values[i])}});
    j["values"] = std::move(pts);
    j["witnesses"] = Json::array();
    if (r.witness)
        j["witnesses"].push_back({{"z", to_string(r.grid[*r.witness])}, {"value", to_string(r.values[*r.witness])}});
    return j;
}

inline Json to_json(const OrthogonalityReport& r)
{
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["kind"] = "orthogonality";
    j["inputs"] = {{"n", std::to_string(r.n)}, {"m", std::to_string(r.m)}, {"x0", to_string(r.x0)}, {"tol", to_scientific(r.tolerance, 3)}};
    j["verdict"] = r.verdict == Outcome::Pass ? "Pass" : (r.verdict == Outcome::Fail ? "Fail" : "Inconclusive");
    j["outcome"] = outcome_name(r.outcome());
    j["truncation_N"] = r.truncation_N;
    if (r.verdict != Outcome::Inconclusive) {
        j["partial_sum"] = float_to_string(r.partial_sum, 40);
        j["tail_bound"] = to_scientific(r.tail_bound, 3);
        j["error"] = float_to_string(r.error, 3);
    }
    j["target"] = to_string(r.target);
    j["witnesses"] = Json::array();
    if (r.verdict == Outcome::Fail)
        j["witnesses"].push_back({{"error", float_to_string(r.error, 6)}, {"allowed", to_scientific(r.tail_bound + r.tolerance, 3)}});
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

inline Json to_json(const TraceCheckReport& r)
{
    Json j;
    j["theorem_id"] = "ode-trajectory";
    j["kind"] = "trajectory";
    j["inputs"] = {{"n", std::to_string(r.n)}, {"from", to_string(r.from)}, {"to", to_string(r.to)}, {"steps", std::to_string(r.steps)}};
    j["verdict"] = r.outcome() == Outcome::Pass ? "Pass" : (r.outcome() == Outcome::Fail ? "Fail" : "Inconclusive");
    j["outcome"] = outcome_name(r.outcome());
    j["samples"] = r.trace.samples.size();
    j["checked"] = r.checked;
    j["outside_enclosure"] = r.outside;
    j["increasing"] = r.increasing;
    Json fin = Json::array();
    if (!r.trace.samples.empty())
        for (const auto& g : r.trace.samples.back().gamma)
            fin.push_back(float_to_string(g, 30));
    j["final_gamma"] = std::move(fin);
    j["witnesses"] = Json::array();
    if (r.witness)
        j["witnesses"].push_back({{"sample", *r.witness}, {"x", to_string(r.trace.samples[*r.witness].x)}});
    if (r.trace.event)
        j["witnesses"].push_back({{"event", r.trace.event->kind}, {"x", to_string(r.trace.event->x)}, {"message", r.trace.event->message}});
    return j;
}

inline Json to_json(const DivergenceReport& r)
{
    Json j;
    j["theorem_id"] = "ode-trajectory";
    j["kind"] = "divergence";
    Json xs = Json::array();
    for (const auto& row : r.rows)
        xs.push_back(to_string(row.x));
    j["inputs"] = {{"n", std::to_string(r.n)}, {"x", std::move(xs)}};
    j["verdict"] = r.passed() ? "Pass" : "Fail";
    j["outcome"] = outcome_name(r.outcome());
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json g = Json::array();
        for (const auto& e : row.gamma)
            g.push_back(enclosure_json(e));
        rows.push_back({{"x", to_string(row.x)}, {"gamma", std::move(g)}, {"gamma_sum", to_string(row.gamma_sum)}, {"sum_certified", row.sum_certified}});
    }
    j["rows"] = std::move(rows);
    Json mono = Json::array();
    for (bool m : r.monotone)
        mono.push_back(m);
    j["growing"] = std::move(mono);
    j["witnesses"] = Json::array();
    for (std::size_t i = 0; i < r.monotone.size(); ++i)
        if (!r.monotone[i])
            j["witnesses"].push_back({{"root", i + 1}, {"relation", ordering_name(r.first_violation[i])}});
    return j;
}

} // namespace dualroots

#endif // DUALROOTS_REPORT_JSON_HPP
