#ifndef DUALROOTS_RATIONAL_HPP
#define DUALROOTS_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dualroots {

/// Exact rational scalar. mpq_class keeps values in lowest terms with a
/// positive denominator once canonicalized; every constructor below does so.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline Integer pow_int(const Integer& base, unsigned long e)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rational pow_int(const Rational& base, unsigned long e)
{
    Integer num = pow_int(Integer(base.get_num()), e);
    Integer den = pow_int(Integer(base.get_den()), e);
    return make_rational(num, den);
}

inline Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Rational ten_to_minus(unsigned long digits)
{
    return make_rational(Integer(1), pow_int(Integer(10), digits));
}

inline bool is_dyadic(const Rational& r)
{
    const Integer den = r.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

/// Smallest power of two that is >= r (r > 0).
inline Rational power_of_two_at_least(const Rational& r)
{
    Rational p = 1;
    while (p < r)
        p *= 2;
    while (p / 2 >= r)
        p /= 2;
    return p;
}

/// Exact "p/q" form, or "p" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Decimal expansion rounded to `digits` places after the point (round half away from zero).
inline std::string to_decimal(const Rational& r, unsigned digits)
{
    const Integer scale = pow_int(Integer(10), digits);
    Rational scaled = abs(r) * scale;
    Integer q = scaled.get_num() / scaled.get_den();
    const Rational frac = scaled - Rational(q);
    if (2 * frac >= 1)
        q += 1;
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= digits)
            s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    if (sgn(r) < 0 && s.find_first_not_of("0.") != std::string::npos)
        s.insert(0, "-");
    return s;
}

/// Decimal with `digits` places, rounded toward -inf (up = false) or +inf (up = true).
/// Used for enclosure endpoints so the printed interval still contains the root.
inline std::string to_decimal_directed(const Rational& r, unsigned digits, bool up)
{
    const Integer scale = pow_int(Integer(10), digits);
    const Rational scaled = r * scale;
    Integer q;
    if (up)
        mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    else
        mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    const bool negative = sgn(q) < 0;
    std::string s = Integer(abs(q)).get_str();
    if (digits > 0) {
        if (s.size() <= digits)
            s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    return negative ? "-" + s : s;
}

/// Scientific notation with `sig` significant digits, e.g. "1.25e-31".
inline std::string to_scientific(const Rational& r, unsigned sig = 3)
{
    if (sgn(r) == 0)
        return "0";
    Rational a = abs(r);
    long exponent = 0;
    while (a >= 10) {
        a /= 10;
        ++exponent;
    }
    while (a < 1) {
        a *= 10;
        --exponent;
    }
    std::string mant = to_decimal(a, sig > 0 ? sig - 1 : 0);
    if (mant.rfind("10", 0) == 0) { // rounding carried into the next decade
        a /= 10;
        ++exponent;
        mant = to_decimal(a, sig > 0 ? sig - 1 : 0);
    }
    return std::string(sgn(r) < 0 ? "-" : "") + mant + "e" + std::to_string(exponent);
}

/// Parses "p", "p/q", finite decimals "-1.25" and exponent forms "1e-20" exactly.
/// Binary floating point is never involved.
inline Rational parse_rational(std::string_view text)
{
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        return fail();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        auto digits_only = [](const std::string& t, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+'))
                i = 1;
            if (i >= t.size())
                return false;
            for (; i < t.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(t[i])))
                    return false;
            return true;
        };
        if (!digits_only(num, true) || !digits_only(den, false))
            return fail();
        Integer n(num[0] == '+' ? num.substr(1) : num, 10);
        Integer d(den, 10);
        if (d == 0)
            return fail();
        return make_rational(n, d);
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '-' || s[i] == '+') {
        negative = s[i] == '-';
        ++i;
    }
    std::string mantissa;
    long frac_digits = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa.push_back(c);
            seen_digit = true;
            if (seen_point)
                ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit)
        return fail();
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E')
            return fail();
        ++i;
        const std::string exp_text = s.substr(i);
        if (exp_text.empty())
            return fail();
        std::size_t j = (exp_text[0] == '-' || exp_text[0] == '+') ? 1 : 0;
        if (j >= exp_text.size())
            return fail();
        for (std::size_t k = j; k < exp_text.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(exp_text[k])))
                return fail();
        if (exp_text.size() - j > 6)
            return fail();
        exponent = std::strtol(exp_text.c_str(), nullptr, 10);
    }
    Rational value(Integer(mantissa, 10), 1);
    const long shift = exponent - frac_digits;
    if (shift >= 0)
        value *= Rational(pow_int(Integer(10), static_cast<unsigned long>(shift)));
    else
        value /= Rational(pow_int(Integer(10), static_cast<unsigned long>(-shift)));
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace dualroots

#endif // DUALROOTS_RATIONAL_HPP
