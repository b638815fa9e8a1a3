#ifndef DUALROOTS_NUMERIC_HPP
#define DUALROOTS_NUMERIC_HPP

#include "rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <iomanip>
#include <ios>
#include <sstream>
#include <string>

namespace dualroots {

/// 256-bit binary float for polishing and Poisson-weighted sums; never used to certify.
using Float = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>, boost::multiprecision::et_off>;

inline Float to_float(const Rational& r)
{
    return Float(r.get_num().get_str()) / Float(r.get_den().get_str());
}

/// Scientific text with `digits` significant digits.
inline std::string float_to_string(const Float& f, int digits = 30)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits - 1) << f;
    return os.str();
}

/// Fixed-point text with `places` decimals.
inline std::string float_to_fixed(const Float& f, int places = 30)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << f;
    return os.str();
}

} // namespace dualroots

#endif // DUALROOTS_NUMERIC_HPP
