#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace schucode {

// Point counts and the cross-multiplied sides of the inequality checks
// overflow int64 on the widest supported grids, so every count is kept
// exact in an arbitrary-precision integer.
using BigInt = boost::multiprecision::cpp_int;

/// base^exp for exp >= 0.
inline BigInt ipow(long base, long exp) {
    BigInt r = 1;
    BigInt b = base;
    for (long i = 0; i < exp; ++i) r *= b;
    return r;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

} // namespace schucode
