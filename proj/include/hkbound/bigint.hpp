#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace hk {

// Bound arithmetic must not overflow: q^{n+1} leaves 64 bits already for
// moderate q, so everything in module bounds is computed over cpp_int.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

} // namespace hk
