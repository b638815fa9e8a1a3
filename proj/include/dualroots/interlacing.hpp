#ifndef DUALROOTS_INTERLACING_HPP
#define DUALROOTS_INTERLACING_HPP

#include "rootlab.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualroots {

/// Aggregate result used for exit codes and suite summaries.
enum class Outcome { Pass, Fail, Inconclusive };

inline std::string_view outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Fail dominates Inconclusive, which dominates Pass.
inline Outcome combine(Outcome a, Outcome b)
{
    if (a == Outcome::Fail || b == Outcome::Fail)
        return Outcome::Fail;
    if (a == Outcome::Inconclusive || b == Outcome::Inconclusive)
        return Outcome::Inconclusive;
    return Outcome::Pass;
}

/// Raised when a checker's real-rootedness precondition does not hold.
class NotRealRooted : public std::invalid_argument {
public:
    NotRealRooted(std::string which, const UniPoly& p, int deficit)
        : std::invalid_argument(which + " is not real-rooted (" + std::to_string(deficit) + " non-real roots): " + p.to_string()),
          which_(std::move(which))
    {
    }

    const std::string& which() const { return which_; }

private:
    std::string which_;
};

enum class InterlaceMode { Strict, Weak };

enum class InterlaceVerdict { StrictInterlace, WeakInterlace, Fail, Inconclusive, DegenerateAtZero };

inline std::string_view interlace_verdict_name(InterlaceVerdict v)
{
    switch (v) {
    case InterlaceVerdict::StrictInterlace: return "StrictInterlace";
    case InterlaceVerdict::WeakInterlace: return "WeakInterlace";
    case InterlaceVerdict::Fail: return "Fail";
    case InterlaceVerdict::Inconclusive: return "Inconclusive";
    case InterlaceVerdict::DegenerateAtZero: return "DegenerateAtZero";
    }
    return "?";
}

enum class RootFilter { All, Positive };

/// One entry of a multiplicity-expanded root list.
struct RootRef {
    std::shared_ptr<RootIsolation> iso;
    std::size_t index;

    const RootEnclosure& enclosure() const { return iso->intervals[index]; }
};

struct InterlaceWitness {
    std::string left;  ///< "p[i]" or "q[j]" in descending order
    std::string right;
    RootEnclosure left_enclosure;
    RootEnclosure right_enclosure;
    RootOrdering relation = RootOrdering::Unresolved;
};

struct InterlacingReport {
    std::string theorem_id;
    std::string label;
    std::map<std::string, std::string> inputs;
    InterlaceMode mode = InterlaceMode::Strict;
    RootFilter filter = RootFilter::All;
    InterlaceVerdict verdict = InterlaceVerdict::Inconclusive;
    bool p_first = true; ///< chain starts with the largest root of p
    UniPoly p;
    UniPoly q;
    std::shared_ptr<RootIsolation> p_iso;
    std::shared_ptr<RootIsolation> q_iso;
    std::vector<RootEnclosure> shared_roots;
    std::optional<InterlaceWitness> witness;
    std::string note;

    bool passed() const
    {
        return verdict == InterlaceVerdict::StrictInterlace || verdict == InterlaceVerdict::DegenerateAtZero
               || (mode == InterlaceMode::Weak && verdict == InterlaceVerdict::WeakInterlace);
    }

    Outcome outcome() const
    {
        if (passed())
            return Outcome::Pass;
        return verdict == InterlaceVerdict::Inconclusive ? Outcome::Inconclusive : Outcome::Fail;
    }
};

namespace detail {

inline bool is_positive_root(const RootEnclosure& e)
{
    return e.exact() ? sgn(e.lo) > 0 : sgn(e.lo) >= 0;
}

/// Roots in descending order, each repeated by multiplicity.
inline std::vector<RootRef> descending_roots(const std::shared_ptr<RootIsolation>& iso, RootFilter filter)
{
    std::vector<RootRef> out;
    for (std::size_t i = iso->intervals.size(); i-- > 0;) {
        if (filter == RootFilter::Positive && !is_positive_root(iso->intervals[i]))
            continue;
        for (int m = 0; m < iso->multiplicities[i]; ++m)
            out.push_back({iso, i});
    }
    return out;
}

struct ChainResult {
    InterlaceVerdict verdict = InterlaceVerdict::StrictInterlace;
    std::vector<RootEnclosure> shared;
    std::optional<InterlaceWitness> witness;
};

inline int verdict_rank(InterlaceVerdict v)
{
    switch (v) {
    case InterlaceVerdict::StrictInterlace: return 0;
    case InterlaceVerdict::WeakInterlace: return 1;
    case InterlaceVerdict::Inconclusive: return 2;
    default: return 3;
    }
}

/// Checks first[0] >= second[0] >= first[1] >= ... ; |first| - |second| must be 0 or 1.
inline ChainResult run_chain(const std::vector<RootRef>& first, const std::vector<RootRef>& second,
                             const std::string& first_name, const std::string& second_name)
{
    ChainResult out;
    std::vector<std::pair<RootRef, std::string>> chain;
    for (std::size_t i = 0; i < first.size(); ++i) {
        chain.push_back({first[i], first_name + "[" + std::to_string(i) + "]"});
        if (i < second.size())
            chain.push_back({second[i], second_name + "[" + std::to_string(i) + "]"});
    }
    for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
        const RootRef& a = chain[c].first;
        const RootRef& b = chain[c + 1].first;
        const RootOrdering rel = compare_roots(*a.iso, a.index, *b.iso, b.index);
        if (rel == RootOrdering::Greater)
            continue;
        if (rel == RootOrdering::Equal) {
            if (out.verdict == InterlaceVerdict::StrictInterlace)
                out.verdict = InterlaceVerdict::WeakInterlace;
            out.shared.push_back(a.enclosure());
            if (!out.witness)
                out.witness = InterlaceWitness{chain[c].second, chain[c + 1].second, a.enclosure(), b.enclosure(), rel};
            continue;
        }
        const InterlaceVerdict v = rel == RootOrdering::Less ? InterlaceVerdict::Fail : InterlaceVerdict::Inconclusive;
        if (verdict_rank(v) > verdict_rank(out.verdict)) {
            out.verdict = v;
            out.witness = InterlaceWitness{chain[c].second, chain[c + 1].second, a.enclosure(), b.enclosure(), rel};
        }
        if (v == InterlaceVerdict::Fail)
            break;
    }
    if (out.verdict == InterlaceVerdict::StrictInterlace)
        out.witness.reset();
    return out;
}

inline std::shared_ptr<RootIsolation> isolate_real_rooted(const UniPoly& p, const std::string& which)
{
    if (p.is_zero())
        throw std::invalid_argument(which + " is the zero polynomial");
    auto iso = std::make_shared<RootIsolation>(isolate(p));
    if (iso->nonreal_deficit != 0)
        throw NotRealRooted(which, p, iso->nonreal_deficit);
    return iso;
}

} // namespace detail

/**
 * Interlacing of the real roots of p and q (descending chain p1 >= q1 >= p2 >= ...).
 * With RootFilter::Positive only the positive roots take part, and the two
 * counts may differ by at most one in either direction.
 */
inline InterlacingReport check_interlacing(const UniPoly& p, const UniPoly& q, InterlaceMode mode,
                                           RootFilter filter = RootFilter::All)
{
    InterlacingReport r;
    r.mode = mode;
    r.filter = filter;
    r.p = p;
    r.q = q;
    if (filter == RootFilter::All && p.degree() - q.degree() != 0 && p.degree() - q.degree() != 1)
        throw std::invalid_argument("interlacing needs deg q in {deg p, deg p - 1}, got " + std::to_string(p.degree())
                                    + " and " + std::to_string(q.degree()));
    r.p_iso = detail::isolate_real_rooted(p, "p");
    r.q_iso = detail::isolate_real_rooted(q, "q");
    refine_all(*r.p_iso, default_theorem_tolerance());
    refine_all(*r.q_iso, default_theorem_tolerance());

    const auto pr = detail::descending_roots(r.p_iso, filter);
    const auto qr = detail::descending_roots(r.q_iso, filter);
    const long diff = static_cast<long>(pr.size()) - static_cast<long>(qr.size());
    if (diff < -1 || diff > 1) {
        r.verdict = InterlaceVerdict::Fail;
        r.note = "root counts " + std::to_string(pr.size()) + " and " + std::to_string(qr.size()) + " differ by more than one";
        return r;
    }

    std::optional<detail::ChainResult> best;
    if (diff >= 0) {
        best = detail::run_chain(pr, qr, "p", "q");
        r.p_first = true;
    }
    if (diff <= 0 && (!best || best->verdict != InterlaceVerdict::StrictInterlace)) {
        auto alt = detail::run_chain(qr, pr, "q", "p");
        if (!best || detail::verdict_rank(alt.verdict) < detail::verdict_rank(best->verdict)) {
            best = std::move(alt);
            r.p_first = false;
        }
    }
    r.verdict = best->verdict;
    r.shared_roots = std::move(best->shared);
    r.witness = std::move(best->witness);
    if (!r.shared_roots.empty())
        r.note = std::to_string(r.shared_roots.size()) + " shared root(s)";
    return r;
}

} // namespace dualroots

#endif // DUALROOTS_INTERLACING_HPP
