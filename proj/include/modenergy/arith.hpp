#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "modenergy/wide_int.hpp"

namespace modenergy {

// Euclidean remainder: the unique r in [0, k-1] with k | (n - r).
// Unlike the builtin %, this stays nonnegative for negative n.
inline u64 euclid_mod(i128 n, u64 k) {
    if (k < 1) throw std::invalid_argument("euclid_mod: k must be >= 1");
    i128 r = n % i128(k);
    if (r < 0) r += i128(k);
    return static_cast<u64>(r);
}

// Sum of the integers in [a, b] by the closed form (b(b+1) - (a-1)a)/2.
inline WideInt range_sum(u64 a, u64 b) {
    if (a < 1 || a > b) throw std::invalid_argument("range_sum: need 1 <= a <= b");
    WideInt hi = WideInt(b) * (WideInt(b) + WideInt(1));
    WideInt lo = WideInt(a - 1) * WideInt(a);
    return WideInt::from_raw((hi - lo).raw() / 2);  // difference is always even
}

struct LcmValue {
    u64 m = 0;
    WideInt value;  // lcm(1, ..., m)
};

// lcm(1..m) by iterated gcd reduction. Throws OverflowError once the value
// leaves 128 bits (around m = 89); periodicity checks need it exact or absent.
inline LcmValue lcm_upto(u64 m) {
    if (m < 1) throw std::invalid_argument("lcm_upto: m must be >= 1");
    WideInt v{1};
    for (u64 k = 2; k <= m; ++k) {
        u64 g = std::gcd(static_cast<u64>(v.raw() % k), k);
        v *= WideInt(k / g);
    }
    return {m, v};
}

inline u64 isqrt_floor(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline u64 isqrt_ceil(u64 n) {
    u64 r = isqrt_floor(n);
    return (u128(r) * r == n) ? r : r + 1;
}

}  // namespace modenergy
