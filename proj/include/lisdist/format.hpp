#pragma once

#include <string>

#include <gmpxx.h>

namespace lisdist {

// Shortest representation that parses back to the same double.
std::string format_double(double x);

// Fixed 15 significant digits, scientific notation.
std::string format_double15(double x);

std::string format_double(double x, bool fixed15);

// Decimal rendering of an exact rational with `digits` significant digits.
std::string format_rational(const mpq_class& q, int digits);

// Decimal rendering of exp(log_value) for values outside double range.
std::string format_from_log10(double log10_value, int digits);

}  // namespace lisdist
