#pragma once

#include <cstdint>
#include <vector>

#include "modenergy/energy.hpp"
#include "modenergy/wide_int.hpp"

namespace modenergy {

// Smallest-prime-factor table for 2..bound. spf[d] is the least prime
// dividing d, so spf[p] == p exactly when p is prime.
struct SpfTable {
    static constexpr u64 kHardCap = 100'000'000;  // hard memory cap in entries

    u64 bound = 0;
    std::vector<u32> spf;  // indexed 0..bound; entries below 2 stay 0

    bool is_prime(u64 d) const { return d >= 2 && d <= bound && spf[d] == d; }
};

SpfTable build_spf(u64 bound, u64 cap = SpfTable::kHardCap);

struct DivisorList {
    u64 d = 0;
    std::vector<u64> divisors;  // sorted, complete, duplicate-free
};

DivisorList divisors(u64 d, const SpfTable& t);

// Visit every divisor of d exactly once, in unspecified order.
// Factors via repeated SPF division, then expands the exponent vectors.
template <class Fn>
void for_each_divisor(u64 d, const SpfTable& t, Fn&& fn) {
    if (d < 1 || d > t.bound) throw RangeExceeded("for_each_divisor: d outside the sieve bound");
    // scratch buffer moved out for the duration of the call, so the
    // enumeration stays reentrant while keeping its capacity across calls
    static thread_local std::vector<u64> cache;
    std::vector<u64> divs = std::move(cache);
    divs.clear();
    divs.push_back(1);
    u64 rest = d;
    while (rest > 1) {
        const u64 p = t.spf[rest];
        u64 pe = 1;
        const std::size_t base = divs.size();
        while (rest % p == 0) {
            rest /= p;
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    for (u64 v : divs) fn(v);
    cache = std::move(divs);
}

// sigma(d): sum of all positive divisors. sigma(p) = p + 1 for primes.
WideInt sigma(u64 d, const SpfTable& t);

// Sum of the divisors of d that do not exceed m; equals sigma(d) once m >= d.
WideInt sigma_bounded(u64 d, u64 m, const SpfTable& t);

// prefix[j] = sigma(1) + ... + sigma(j)
struct SummatorySigma {
    u64 bound = 0;
    std::vector<u64> prefix;  // prefix[0] = 0, nondecreasing
};

SummatorySigma summatory_sigma(u64 bound, const SpfTable& t);

// E_m(n) = mn - sum_{d<=n} sigma_{<=m}(d). Verification-oriented: the cost is
// the total divisor count up to n, far from competitive for single queries.
WideInt energy_divisor_batch(u64 m, u64 n, const SpfTable& t);

struct EnergySeries {
    u64 m = 0;
    u64 n0 = 0;
    u64 n1 = 0;
    std::vector<WideInt> values;  // values[i] = E_m(n0 + i)
};

// Streaming finite-difference walk: emit(n, E_m(n)) for every n in [n0, n1].
// The base E_m(n0) comes from energy_grouped; each step adds
// m - sigma_{<=m}(n+1), so a step costs one divisor enumeration.
template <class Fn>
void energy_range_stream(u64 m, u64 n0, u64 n1, const SpfTable& t, Fn&& emit) {
    if (n0 > n1) throw std::invalid_argument("energy_range_stream: need n0 <= n1");
    if (n1 > t.bound) throw RangeExceeded("energy_range_stream: n1 outside the sieve bound");
    WideInt value = energy_grouped(m, n0);
    emit(n0, value);
    for (u64 n = n0 + 1; n <= n1; ++n) {
        value = value + WideInt(m) - sigma_bounded(n, m, t);
        emit(n, value);
    }
}

EnergySeries energy_range_incremental(u64 m, u64 n0, u64 n1, const SpfTable& t);

}  // namespace modenergy
