// Exact arithmetic helpers shared by every module.
//
// All probabilities in the library are held as GMP rationals. Floats appear
// only where an irrational constant forces them (normal CDF, square roots in
// bound renderings, translated Poisson).

#ifndef STEIN_RATIONAL_HPP_
#define STEIN_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace stein {

using Integer = mpz_class;
using Rational = mpq_class;

/// Largest integer <= x (rounds toward negative infinity).
Integer floor(const Rational& x);

/// Smallest integer >= x.
Integer ceil(const Rational& x);

/// Fractional part <x> = x - floor(x), always in [0, 1).
Rational fractional_part(const Rational& x);

Rational abs(const Rational& x);

/// Binomial coefficient C(n, k); zero when k < 0 or k > n.
Integer binomial(long n, long k);

/// Integer power of a rational.
Rational pow(const Rational& base, unsigned long exponent);

double to_double(const Rational& x);

/// Canonical "p/q" form ("3", "-1/10").
std::string to_fraction_string(const Rational& x);

/// Decimal rendering. Terminating expansions are printed exactly ("0.1");
/// otherwise the value is rounded to `digits` significant decimals after the
/// point and suffixed with "...".
std::string to_decimal_string(const Rational& x, int digits = 30);

/// Parses "a/b" or "a". Decimal points and exponents are rejected so that
/// command-line values cannot silently lose precision.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Makes a rational from numerator and denominator (denominator != 0).
Rational make_rational(long num, long den);
Rational make_rational(const Integer& num, const Integer& den);

}  // namespace stein

#endif  // STEIN_RATIONAL_HPP_
