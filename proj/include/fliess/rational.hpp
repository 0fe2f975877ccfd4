#ifndef FLIESS_RATIONAL_HPP
#define FLIESS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace fliess {

/// Arbitrary-precision signed integer. Coefficients in this library grow
/// factorially (the Ferfera series alone has <c, x1^k> = k!), so fixed-width
/// integers are not an option for identity tests.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

/// Canonical "p/q" rendering, denominator always present ("3" prints as "3/1").
inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Compact rendering: integers without the "/1" tail.
inline std::string to_short_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return to_fraction_string(q);
}

/// Parses "p", "-p" or "p/q". Throws std::runtime_error on malformed input.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::runtime_error("parse_rational: zero denominator in '" + s + "'");
    return Rational(num, den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

} // namespace fliess

#endif
