#include "modenergy/energy.hpp"

#include <algorithm>
#include <stdexcept>

#include "modenergy/sieve.hpp"

namespace modenergy {

namespace {

void require_query(u64 m, u64 n) {
    if (m < 1) throw std::invalid_argument("energy: m must be >= 1");
    if (m > kInputCap || n > kInputCap)
        throw OverflowError("energy: m and n are capped at 2^63 - 1");
}

}  // namespace

WideInt energy_naive(u64 m, u64 n) {
    require_query(m, n);
    u128 sum = 0;  // bounded by m(m-1)/2 < 2^125
    for (u64 k = 1; k <= m; ++k) sum += n % k;
    return WideInt::from_raw(sum);
}

WideInt energy_grouped(u64 m, u64 n, GroupedStats* stats) {
    require_query(m, n);
    WideInt total = WideInt(m) * WideInt(n);
    const u64 k_cap = std::min(m, n);
    u64 blocks = 0;
    u64 k = 1;
    while (k <= k_cap) {
        const u64 q = n / k;  // q >= 1 because k <= n
        const u64 k_hi = std::min(k_cap, n / q);
        total -= WideInt(q) * range_sum(k, k_hi);
        k = k_hi + 1;
        ++blocks;
    }
    if (blocks > 2 * isqrt_ceil(n) + 2)
        throw std::logic_error("energy_grouped: quotient block count exceeded 2*ceil(sqrt(n)) + 2");
    if (stats) stats->blocks = blocks;
    return total;
}

std::vector<QuotientBlock> quotient_blocks(u64 m, u64 n) {
    require_query(m, n);
    std::vector<QuotientBlock> blocks;
    const u64 k_cap = std::min(m, n);
    u64 k = 1;
    while (k <= k_cap) {
        const u64 q = n / k;
        const u64 k_hi = std::min(k_cap, n / q);
        blocks.push_back({k, k_hi, q});
        k = k_hi + 1;
    }
    return blocks;
}

BlockDecomposition block_decompose(u64 m, u64 n) {
    require_query(m, n);
    BlockDecomposition d;
    d.m = m;
    d.q = n / m;
    d.r = n % m;
    d.b.resize(m);
    for (u64 k = 1; k <= m; ++k) d.b[k - 1] = m % k;
    return d;
}

WideInt energy_block(u64 m, u64 q, u64 r, WideInt e_mm) {
    if (m < 1) throw std::invalid_argument("energy_block: m must be >= 1");
    if (r >= m) throw std::invalid_argument("energy_block: need 0 <= r < m");
    if (u128(q) * m + r > kInputCap)
        throw OverflowError("energy_block: qm + r exceeds the 2^63 - 1 input cap");
    WideInt total = e_mm * WideInt(q) + WideInt(m) * WideInt(r);
    u128 correction = 0;  // bounded by q*E_m(m) + mr < 2^127
    for (u64 k = 1; k <= m; ++k) {
        const u64 b = m % k;
        const u64 x = q * b + r;  // q*b + r <= qm + r <= 2^63 - 1 after the cap check
        correction += x / k * k;
    }
    return total - WideInt::from_raw(correction);
}

WideInt energy_diagonal(u64 n, const SummatorySigma& s) {
    if (n < 1) throw std::invalid_argument("energy_diagonal: n must be >= 1");
    if (n > s.bound) throw RangeExceeded("energy_diagonal: n outside the summatory-sigma bound");
    return WideInt(n) * WideInt(n) - WideInt(s.prefix[n]);
}

WideInt energy_signed(u64 m, i128 n) {
    if (m < 1) throw std::invalid_argument("energy_signed: m must be >= 1");
    if (m > kInputCap) throw OverflowError("energy_signed: m is capped at 2^63 - 1");
    u128 sum = 0;
    for (u64 k = 1; k <= m; ++k) sum += euclid_mod(n, k);
    return WideInt::from_raw(sum);
}

}  // namespace modenergy
