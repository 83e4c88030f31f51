#ifndef GM_RATIONAL_HPP
#define GM_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gm/errors.hpp"

namespace gm {

// Exact coefficient field: arbitrary-precision rationals. cpp_rational keeps
// the canonical form we rely on everywhere (gcd(num, den) = 1, den > 0,
// zero stored as 0/1).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Build p/q with sign normalization; throws on q = 0.
inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline Rational make_rational(long long num, long long den) {
    return make_rational(Int(num), Int(den));
}

/// Serialize as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

namespace detail {
inline Int int_from_decimal(std::string_view text) {
    bool negative = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    if (i == text.size()) throw Error("malformed integer literal: " + std::string(text));
    Int v = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw Error("malformed integer literal: " + std::string(text));
        v = v * 10 + (text[i] - '0');
    }
    return negative ? Int(-v) : v;
}
} // namespace detail

/// Parse "p" or "p/q" (optional leading minus on p).
inline Rational rational_from_string(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(detail::int_from_decimal(text));
    return make_rational(detail::int_from_decimal(text.substr(0, slash)),
                         detail::int_from_decimal(text.substr(slash + 1)));
}

/// Largest integer <= r.
inline Int floor_int(const Rational& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

/// Representative of r mod 1 in [0, 1).
inline Rational mod_one(const Rational& r) {
    return r - Rational(floor_int(r));
}

} // namespace gm

#endif // GM_RATIONAL_HPP
