#ifndef DUALROOTS_GRID_HPP
#define DUALROOTS_GRID_HPP

#include "rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dualroots {

/// Points per unit interval used when a checker's grid is not given.
inline constexpr int kDefaultGridPoints = 9;

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline void sort_unique(std::vector<Rational>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace detail

/**
 * "dyadic:[a,b):N" is N equally spaced points from a to b inclusive, with an
 * endpoint dropped when its bracket is open; every point must be dyadic.
 */
inline std::vector<Rational> parse_dyadic_grid(std::string_view body)
{
    auto fail = [&](const std::string& why) -> std::vector<Rational> {
        throw std::invalid_argument("bad grid 'dyadic:" + std::string(body) + "': " + why);
    };
    if (body.size() < 5)
        return fail("expected [a,b]:N");
    const char open = body.front();
    if (open != '[' && open != '(')
        return fail("missing opening bracket");
    const auto close_pos = body.find_first_of("])");
    if (close_pos == std::string_view::npos)
        return fail("missing closing bracket");
    const char close = body[close_pos];
    const auto parts = detail::split(body.substr(1, close_pos - 1), ',');
    if (parts.size() != 2)
        return fail("expected two endpoints");
    if (close_pos + 1 >= body.size() || body[close_pos + 1] != ':')
        return fail("expected ':N' after the interval");
    const std::string count_text(body.substr(close_pos + 2));
    if (count_text.empty() || !std::all_of(count_text.begin(), count_text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return fail("point count must be a positive integer");
    const long count = std::stol(count_text);
    if (count < 2)
        return fail("need at least 2 points");
    const Rational a = parse_rational(parts[0]);
    const Rational b = parse_rational(parts[1]);
    if (!(a < b))
        return fail("need a < b");
    std::vector<Rational> out;
    for (long i = 0; i < count; ++i) {
        if ((i == 0 && open == '(') || (i == count - 1 && close == ')'))
            continue;
        Rational t = a + (b - a) * i / (count - 1);
        t.canonicalize();
        if (!is_dyadic(t))
            return fail("point " + to_string(t) + " is not dyadic");
        out.push_back(t);
    }
    if (out.empty())
        return fail("grid is empty");
    return out;
}

/// The default two-sided grid on [-1,1] without 0: dyadic:[-1,0):9 joined with dyadic:(0,1]:9.
inline std::vector<Rational> support_grid(int points = kDefaultGridPoints)
{
    const std::string n = std::to_string(points);
    std::vector<Rational> g = parse_dyadic_grid("[-1,0):" + n);
    const std::vector<Rational> right = parse_dyadic_grid("(0,1]:" + n);
    g.insert(g.end(), right.begin(), right.end());
    return g;
}

/**
 * Grid text: "dyadic:[a,b):N", "support" (the two-sided default), or an
 * explicit list "a,b,c" of exact rationals. Output is sorted and deduplicated.
 */
inline std::vector<Rational> parse_grid(std::string_view text)
{
    std::vector<Rational> out;
    if (text.rfind("dyadic:", 0) == 0)
        out = parse_dyadic_grid(text.substr(7));
    else if (text == "support")
        out = support_grid();
    else {
        for (const auto& item : detail::split(text, ','))
            out.push_back(parse_rational(item));
    }
    if (out.empty())
        throw std::invalid_argument("grid is empty");
    detail::sort_unique(out);
    return out;
}

/// Union of several grid specifications.
inline std::vector<Rational> parse_grids(const std::vector<std::string>& specs)
{
    std::vector<Rational> out;
    for (const auto& s : specs) {
        auto g = parse_grid(s);
        out.insert(out.end(), g.begin(), g.end());
    }
    detail::sort_unique(out);
    return out;
}

} // namespace dualroots

#endif // DUALROOTS_GRID_HPP
