#include "modenergy/sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace modenergy {

SpfTable build_spf(u64 bound, u64 cap) {
    if (bound < 2) throw std::invalid_argument("build_spf: bound must be >= 2");
    if (bound > cap) throw CapExceeded("build_spf: bound exceeds the sieve memory cap");
    SpfTable t;
    t.bound = bound;
    t.spf.assign(bound + 1, 0);
    for (u64 i = 2; i <= bound; ++i) {
        if (t.spf[i] != 0) continue;  // composite, already marked
        for (u64 j = i; j <= bound; j += i)
            if (t.spf[j] == 0) t.spf[j] = static_cast<u32>(i);
    }
    return t;
}

DivisorList divisors(u64 d, const SpfTable& t) {
    if (d < 1 || d > t.bound) throw RangeExceeded("divisors: d outside the sieve bound");
    DivisorList list;
    list.d = d;
    for_each_divisor(d, t, [&](u64 v) { list.divisors.push_back(v); });
    std::sort(list.divisors.begin(), list.divisors.end());
    return list;
}

WideInt sigma(u64 d, const SpfTable& t) {
    if (d < 1 || d > t.bound) throw RangeExceeded("sigma: d outside the sieve bound");
    u128 s = 1;
    u64 rest = d;
    while (rest > 1) {
        const u64 p = t.spf[rest];
        u128 pe = 1;
        u128 geo = 1;  // 1 + p + ... + p^e
        while (rest % p == 0) {
            rest /= p;
            pe *= p;
            geo += pe;
        }
        s *= geo;
    }
    return WideInt::from_raw(s);
}

WideInt sigma_bounded(u64 d, u64 m, const SpfTable& t) {
    if (m >= d) return sigma(d, t);
    u64 s = 0;  // partial divisor sum, below sigma(d) <= 4d
    for_each_divisor(d, t, [&](u64 v) {
        if (v <= m) s += v;
    });
    return WideInt(s);
}

SummatorySigma summatory_sigma(u64 bound, const SpfTable& t) {
    if (bound < 1) throw std::invalid_argument("summatory_sigma: bound must be >= 1");
    if (bound > t.bound) throw RangeExceeded("summatory_sigma: bound outside the sieve bound");
    SummatorySigma s;
    s.bound = bound;
    s.prefix.assign(bound + 1, 0);
    u128 acc = 0;
    for (u64 d = 1; d <= bound; ++d) {
        acc += sigma(d, t).raw();
        if (acc > u128{~u64{0}})
            throw OverflowError("summatory_sigma: prefix sum exceeds 64 bits");
        s.prefix[d] = static_cast<u64>(acc);
    }
    return s;
}

WideInt energy_divisor_batch(u64 m, u64 n, const SpfTable& t) {
    if (m < 1 || n < 1) throw std::invalid_argument("energy_divisor_batch: need m, n >= 1");
    if (n > t.bound) throw RangeExceeded("energy_divisor_batch: n outside the sieve bound");
    WideInt total = WideInt(m) * WideInt(n);
    u128 sub = 0;  // sum of bounded divisor sums, at most sum_{d<=n} sigma(d)
    for (u64 d = 1; d <= n; ++d) sub += sigma_bounded(d, m, t).raw();
    return total - WideInt::from_raw(sub);
}

EnergySeries energy_range_incremental(u64 m, u64 n0, u64 n1, const SpfTable& t) {
    EnergySeries series;
    series.m = m;
    series.n0 = n0;
    series.n1 = n1;
    series.values.reserve(n1 - n0 + 1);
    energy_range_stream(m, n0, n1, t, [&](u64, WideInt v) { series.values.push_back(v); });
    return series;
}

}  // namespace modenergy
