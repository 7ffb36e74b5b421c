#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cvtkit {

// Arbitrary-precision non-negative integer. GMP does the heavy lifting;
// nothing in the core assumes a fixed word size.
using Natural = mpz_class;

// value^exponent for machine-sized exponents.
Natural natural_pow(const Natural& value, unsigned long exponent);

// Strict decimal parse: digits only, no sign, no whitespace.
Natural parse_natural(const std::string& text);

bool fits_uint64(const Natural& value);
std::uint64_t to_uint64(const Natural& value);

}  // namespace cvtkit
