#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace icb {

/// Exact rational with unbounded numerator and denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" in lowest terms with q > 0; integers are written "p/1".
std::string to_fraction_string(const Rational& r);

/// Human-facing form: "5/2", "4", "-1".
std::string to_display_string(const Rational& r);

/// Accepts "p/q", "p" and optional leading sign. Throws InputError otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

}  // namespace icb
