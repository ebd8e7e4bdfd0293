#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace critspec {

// Exact arithmetic throughout: vertex values are rationals, matrix entries
// are arbitrary-precision integers.
using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "n", "-n", "p/q" with q > 0. The result is canonicalized.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical form: "n" for integers, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

}  // namespace critspec
