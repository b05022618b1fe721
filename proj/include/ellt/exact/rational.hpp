#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ellt::exact {

// mpq_class keeps numerator and denominator coprime with a positive
// denominator after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "n" when the value is integral.
std::string to_string(const Rational& q);

// Accepts "n", "p/q" and surrounding whitespace; throws ValidationError.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Integer power with exponent of either sign; 0^negative throws DivisionByZero.
Rational pow(const Rational& base, long exponent);

}  // namespace ellt::exact
