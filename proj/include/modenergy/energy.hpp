#pragma once

#include <vector>

#include "modenergy/arith.hpp"

namespace modenergy {

struct SummatorySigma;  // sieve.hpp

// Maximal run [k_lo, k_hi] of moduli sharing the quotient q = floor(n/k).
struct QuotientBlock {
    u64 k_lo = 0;
    u64 k_hi = 0;
    u64 q = 0;
    bool operator==(const QuotientBlock&) const = default;
};

// n = qm + r together with the residues b[k-1] = m mod k that drive the
// block recursion E_m(qm+r) = q E_m(m) + mr - sum_k k*floor((q b_k + r)/k).
struct BlockDecomposition {
    u64 m = 0;
    u64 q = 0;
    u64 r = 0;
    std::vector<u64> b;
};

struct GroupedStats {
    u64 blocks = 0;  // quotient blocks visited
};

// E_m(n) = sum_{k=1}^{m} (n mod k), one modulus at a time. O(m).
WideInt energy_naive(u64 m, u64 n);

// Same value via E_m(n) = mn - sum_k k*floor(n/k) with the floor sum taken
// block-wise over runs of constant quotient. O(sqrt(n)) blocks when m >= n;
// moduli beyond n contribute nothing to the subtracted sum.
WideInt energy_grouped(u64 m, u64 n, GroupedStats* stats = nullptr);

// The ordered, gap-free partition of [1, min(m, n)] into quotient blocks.
std::vector<QuotientBlock> quotient_blocks(u64 m, u64 n);

BlockDecomposition block_decompose(u64 m, u64 n);

// E_m(qm + r) from a cached e_mm = E_m(m). O(m).
WideInt energy_block(u64 m, u64 q, u64 r, WideInt e_mm);

// E_n(n) = n^2 - (sigma(1) + ... + sigma(n)). Needs s.bound >= n.
WideInt energy_diagonal(u64 n, const SummatorySigma& s);

// E_m(n) for any integer n, using the Euclidean remainder throughout.
// Coincides with energy_naive for n >= 0.
WideInt energy_signed(u64 m, i128 n);

inline WideInt max_energy(u64 m) {
    // m(m-1)/2, the sharp upper bound for E_m
    return WideInt::from_raw(u128(m) * (m - 1) / 2);
}

}  // namespace modenergy
