#pragma once

#include <gmpxx.h>

#include <string>

namespace qlab {

/// Arbitrary-precision signed integer. All coefficient arithmetic goes through GMP.
using BigInt = mpz_class;

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline BigInt from_decimal(const std::string& s) { return BigInt(s, 10); }

/// Floor division for machine integers (rounds toward negative infinity).
constexpr long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace qlab
