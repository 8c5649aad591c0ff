#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>

namespace quiver {

using Rat = mpq_class;
using BigInt = mpz_class;

// Parses "5", "-2", "3/4" or a decimal like "0.0005" into an exact rational.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical text form: integer if the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& r);

bool rat_is_integer(const Rat& r);

BigInt rat_floor(const Rat& r);
BigInt rat_ceil(const Rat& r);

}  // namespace quiver
