#include "modenergy/identities.hpp"

#include <algorithm>
#include <initializer_list>
#include <utility>

#include "json.hpp"

namespace modenergy {

namespace {

// Deterministic across platforms, unlike the std distributions.
struct SplitMix64 {
    u64 state;
    explicit SplitMix64(u64 seed) : state(seed) {}
    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform-ish in [0, bound); the modulo bias is irrelevant here
    u64 below(u64 bound) { return bound == 0 ? 0 : next() % bound; }
};

// Random-phase input ceilings. Naive evaluation is O(m), so m stays where a
// single naive pass is cheap while n ranges far beyond the exhaustive grid.
constexpr u64 kRandMaxM = 100'000;
constexpr u64 kRandMaxMGrouping = 1'000'000;
constexpr u64 kRandMaxN = u64{1} << 40;
constexpr u64 kRandMaxNDivisorSum = 20'000;
constexpr u64 kRandMaxNRecursion = 1'000'000;
constexpr u64 kRandMaxNDiagonal = 100'000;
constexpr u64 kRandMaxMBounds = 24;  // lcm(1..24) still leaves room for j*L_m
constexpr u64 kPeriodicityMaxM = 20;
constexpr u64 kPrimeClaimsMaxJ = 20;

std::string fmt_params(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ',';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

std::string num(u64 v) { return std::to_string(v); }
std::string num_i(i128 v) { return to_string_i128(v); }

IdentityCheck pass(Suite s, std::string params) { return {s, std::move(params), true, {}}; }

IdentityCheck fail(Suite s, std::string params, std::string witness) {
    return {s, std::move(params), false, std::move(witness)};
}

// Capacity errors escape with the offending check named.
template <class Fn>
auto annotate_capacity(Suite s, const std::string& params, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const OverflowError& e) {
        throw OverflowError(std::string(suite_name(s)) + " [" + params + "]: " + e.what());
    } catch (const RangeExceeded& e) {
        throw RangeExceeded(std::string(suite_name(s)) + " [" + params + "]: " + e.what());
    }
}

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// mn - sum_{k<=m} k*floor(n/k), term by term. Independent of the grouped path.
WideInt floor_sum_route(u64 m, u64 n) {
    WideInt total = WideInt(m) * WideInt(n);
    u128 sub = 0;
    for (u64 k = 1; k <= m; ++k) sub += u128(n / k) * k;
    return total - WideInt::from_raw(sub);
}

}  // namespace

std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::bounds: return "bounds";
        case Suite::symmetry: return "symmetry";
        case Suite::floor_sum: return "floor-sum";
        case Suite::divisor_sum: return "divisor-sum";
        case Suite::grouping: return "grouping";
        case Suite::diagonal: return "diagonal";
        case Suite::congruence: return "congruence";
        case Suite::recursion: return "recursion";
        case Suite::regimes: return "regimes";
        case Suite::periodicity: return "periodicity";
        case Suite::primality: return "primality";
        case Suite::prime_claims: return "prime-claims";
    }
    return "?";
}

std::optional<Suite> suite_from_name(std::string_view name) {
    for (Suite s : kAllSuites)
        if (suite_name(s) == name) return s;
    return std::nullopt;
}

ResidueBlockCount residue_block_counts(u64 m, u64 n, u64 t) {
    if (m < 1 || t < 1) throw std::invalid_argument("residue_block_counts: need m, t >= 1");
    ResidueBlockCount r;
    r.m = m;
    r.n = n;
    r.t = t;
    r.counts.assign(t, 0);
    for (u64 k = 1; k <= m; ++k) ++r.counts[(n % k) % t];
    r.multiples = m / t;
    return r;
}

IdentityCheck check_extremal(u64 m, u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}});
    return annotate_capacity(Suite::bounds, params, [&] {
        const WideInt e = cx.subject(m, n);
        const WideInt emax = max_energy(m);
        const WideInt lcm = lcm_upto(m).value;
        const u128 rem = u128(n) % lcm.raw();
        if (e > emax)
            return fail(Suite::bounds, params, "E=" + e.str() + " exceeds m(m-1)/2=" + emax.str());
        if ((e == WideInt(0)) != (rem == 0))
            return fail(Suite::bounds, params,
                        "E=" + e.str() + " but n mod lcm(1..m)=" + WideInt::from_raw(rem).str());
        if ((e == emax) != (rem == lcm.raw() - 1))
            return fail(Suite::bounds, params,
                        "E=" + e.str() + " vs max=" + emax.str() +
                            " but n mod lcm(1..m)=" + WideInt::from_raw(rem).str());
        return pass(Suite::bounds, params);
    });
}

IdentityCheck check_complementary(u64 m, i128 n, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num_i(n)}});
    const WideInt lhs = cx.subject_signed(m, n) + cx.subject_signed(m, -n - 1);
    const WideInt rhs = max_energy(m);
    if (lhs != rhs)
        return fail(Suite::symmetry, params,
                    "E(n)+E(-n-1)=" + lhs.str() + " expected " + rhs.str());
    return pass(Suite::symmetry, params);
}

IdentityCheck check_floor_sum(u64 m, u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}});
    const WideInt lhs = cx.subject(m, n);
    const WideInt rhs = floor_sum_route(m, n);
    if (lhs != rhs)
        return fail(Suite::floor_sum, params, "E=" + lhs.str() + " floor-sum=" + rhs.str());
    return pass(Suite::floor_sum, params);
}

IdentityCheck check_divisor_sum(u64 m, u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}});
    return annotate_capacity(Suite::divisor_sum, params, [&] {
        const WideInt lhs = cx.subject(m, n);
        const WideInt rhs = energy_divisor_batch(m, n, *cx.spf);
        if (lhs != rhs)
            return fail(Suite::divisor_sum, params,
                        "E=" + lhs.str() + " divisor-batch=" + rhs.str());
        return pass(Suite::divisor_sum, params);
    });
}

IdentityCheck check_grouping(u64 m, u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}});
    const WideInt lhs = cx.subject(m, n);
    GroupedStats stats;
    const WideInt rhs = energy_grouped(m, n, &stats);
    if (lhs != rhs)
        return fail(Suite::grouping, params, "E=" + lhs.str() + " grouped=" + rhs.str());

    const auto blocks = quotient_blocks(m, n);
    const u64 k_cap = std::min(m, n);
    u64 expect_lo = 1;
    for (const auto& b : blocks) {
        if (b.k_lo != expect_lo || b.k_hi < b.k_lo || b.k_hi > k_cap)
            return fail(Suite::grouping, params,
                        "block [" + num(b.k_lo) + "," + num(b.k_hi) + "] breaks the partition");
        if (n / b.k_lo != b.q || n / b.k_hi != b.q)
            return fail(Suite::grouping, params,
                        "quotient not constant on [" + num(b.k_lo) + "," + num(b.k_hi) + "]");
        if (b.k_hi < k_cap && b.q >= 1 && n / (b.k_hi + 1) >= b.q)
            return fail(Suite::grouping, params,
                        "block [" + num(b.k_lo) + "," + num(b.k_hi) + "] is not maximal");
        expect_lo = b.k_hi + 1;
    }
    if (expect_lo != k_cap + 1)
        return fail(Suite::grouping, params, "blocks do not cover [1, min(m,n)]");
    if (blocks.size() != stats.blocks || blocks.size() > 2 * isqrt_ceil(n) + 2)
        return fail(Suite::grouping, params,
                    "block count " + num(blocks.size()) + " out of bounds");
    return pass(Suite::grouping, params);
}

IdentityCheck check_diagonal(u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"n", num(n)}});
    return annotate_capacity(Suite::diagonal, params, [&] {
        const WideInt lhs = cx.subject(n, n);
        const WideInt rhs = energy_diagonal(n, *cx.ssigma);
        if (lhs != rhs)
            return fail(Suite::diagonal, params, "E=" + lhs.str() + " diagonal=" + rhs.str());
        return pass(Suite::diagonal, params);
    });
}

IdentityCheck check_congruences(u64 m, u64 n, u64 t, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}, {"t", num(t)}});
    const WideInt e = cx.subject(m, n);
    const auto rbc = residue_block_counts(m, n, t);

    u128 weighted = 0;
    for (u64 r = 0; r < t; ++r) weighted += u128(r) * rbc.counts[r];
    if (e.raw() % t != weighted % t)
        return fail(Suite::congruence, params,
                    "E mod t=" + num(u64(e.raw() % t)) +
                        " residue-weighted=" + num(u64(weighted % t)));

    u128 multiples_sum = 0;
    for (u64 k = t; k <= m; k += t) multiples_sum += n % k;
    const u128 expect = u128(rbc.multiples) * (n % t);
    if (multiples_sum % t != expect % t)
        return fail(Suite::congruence, params,
                    "sum over t|k =" + num(u64(multiples_sum % t)) +
                        " expected M_t(m)*n=" + num(u64(expect % t)) + " (mod t)");
    return pass(Suite::congruence, params);
}

IdentityCheck check_recursions(u64 m, u64 n, u64 m1, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}, {"m1", num(m1)}});
    return annotate_capacity(Suite::recursion, params, [&] {
        // finite difference: E_m(n+1) = E_m(n) + m - sigma_{<=m}(n+1)
        const WideInt next = cx.subject(m, n + 1);
        const WideInt step = energy_naive(m, n) + WideInt(m) - sigma_bounded(n + 1, m, *cx.spf);
        if (next != step)
            return fail(Suite::recursion, params,
                        "difference: E(n+1)=" + next.str() + " recurrence=" + step.str());

        // additivity at the split m1: E_m(n) = E_{m1}(n) + sum_{k>m1} (n mod k)
        WideInt split = (m1 >= 1) ? energy_naive(m1, n) : WideInt(0);
        u128 tail = 0;
        for (u64 k = m1 + 1; k <= m; ++k) tail += n % k;
        split += WideInt::from_raw(tail);
        const WideInt e = cx.subject(m, n);
        if (e != split)
            return fail(Suite::recursion, params,
                        "additivity: E=" + e.str() + " split=" + split.str());

        // block recursion at q = floor(n/m), r = n mod m
        const WideInt blocked = energy_block(m, n / m, n % m, energy_naive(m, m));
        if (e != blocked)
            return fail(Suite::recursion, params,
                        "block: E=" + e.str() + " recursion=" + blocked.str());
        return pass(Suite::recursion, params);
    });
}

IdentityCheck check_regimes(u64 m, u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}});
    const WideInt e = cx.subject(m, n);

    if (n <= m) {
        // truncation: E_m(n) = E_n(n) + (m-n)n
        const WideInt trunc = energy_naive(n, n) + WideInt(m - n) * WideInt(n);
        if (e != trunc)
            return fail(Suite::regimes, params,
                        "truncation: E=" + e.str() + " got " + trunc.str());
    }
    if (n >= m) {
        // quotient decomposition: E_m(n) = mn - sum_q q * sum_{k in K_q} k
        WideInt decomposed = WideInt(m) * WideInt(n);
        for (const auto& b : quotient_blocks(m, n))
            decomposed -= WideInt(b.q) * range_sum(b.k_lo, b.k_hi);
        if (e != decomposed)
            return fail(Suite::regimes, params,
                        "decomposition: E=" + e.str() + " got " + decomposed.str());
    }
    return pass(Suite::regimes, params);
}

IdentityCheck check_periodicity(u64 m, u64 n, u64 m1, const CheckContext& cx) {
    auto params = fmt_params({{"m", num(m)}, {"n", num(n)}, {"m1", num(m1)}});
    return annotate_capacity(Suite::periodicity, params, [&] {
        const LcmValue lcm = lcm_upto(m);
        if (WideInt(n) + lcm.value > WideInt(kInputCap))
            throw OverflowError("n + lcm(1..m) exceeds the input cap");
        const u64 shifted = n + lcm.value.as_u64();
        const WideInt at_shift = cx.subject(m, shifted);
        const WideInt at_n = energy_naive(m, n);
        if (at_shift != at_n)
            return fail(Suite::periodicity, params,
                        "E(n+L)=" + at_shift.str() + " E(n)=" + at_n.str());
        if (m1 >= 1 && m1 <= m) {
            const WideInt sub_lcm = lcm_upto(m1).value;
            if (lcm.value % sub_lcm != WideInt(0))
                return fail(Suite::periodicity, params,
                            "lcm(1.." + num(m1) + ") does not divide lcm(1.." + num(m) + ")");
        }
        return pass(Suite::periodicity, params);
    });
}

IdentityCheck check_primality(u64 n, const CheckContext& cx) {
    auto params = fmt_params({{"n", num(n)}});
    return annotate_capacity(Suite::primality, params, [&] {
        const bool via_energy = is_prime_via_energy(n, *cx.ssigma);
        const bool via_trial = trial_prime(n);
        if (via_energy != via_trial)
            return fail(Suite::primality, params,
                        std::string("energy test says ") + (via_energy ? "prime" : "composite") +
                            ", trial division disagrees");
        // diagonal difference route: E_n(n) - E_{n-1}(n-1) = (2n-1) - sigma(n)
        const i128 diff = i128(cx.subject(n, n).raw()) - i128(energy_naive(n - 1, n - 1).raw());
        const i128 expect = i128(2 * n - 1) - i128(sigma(n, *cx.spf).raw());
        if (diff != expect)
            return fail(Suite::primality, params,
                        "diagonal diff=" + num_i(diff) +
                            " expected (2n-1)-sigma(n)=" + num_i(expect));
        return pass(Suite::primality, params);
    });
}

PrimeClaimResult check_prime_claims(u64 p, u64 other, const CheckContext& cx) {
    if (!trial_prime(p)) throw NotPrime("check_prime_claims: p = " + num(p) + " is not prime");
    auto params = fmt_params({{"p", num(p)}, {"other", num(other)}});
    PrimeClaimResult result;

    // A: behavior at the prime argument n = p, with m = other
    const u64 m = other;
    const WideInt lhs = cx.subject(m, p);
    const WideInt rhs = (m >= p) ? energy_naive(p, p) + WideInt(m - p) * WideInt(p)
                                 : floor_sum_route(m, p);
    result.check = (lhs == rhs)
                       ? pass(Suite::prime_claims, params)
                       : fail(Suite::prime_claims, params,
                              "n-prime identity: E=" + lhs.str() + " expected " + rhs.str());

    // B: audit of the congruence claim "p | n implies E_p(n) ≡ 0 (mod p)".
    // Violations become findings; they flag a false claim, not a bug.
    if (other % p == 0) {
        const WideInt e = energy_naive(p, other);
        const u64 residue = static_cast<u64>(e.raw() % p);
        if (residue != 0)
            result.finding = Finding{"m-prime-congruence", p, other, e, residue};
    }
    return result;
}

bool is_prime_via_energy(u64 n, const SummatorySigma& s) {
    if (n < 2) throw std::invalid_argument("is_prime_via_energy: n must be >= 2");
    if (n > s.bound)
        throw RangeExceeded("is_prime_via_energy: n outside the summatory-sigma bound");
    const i128 diff = i128(energy_diagonal(n, s).raw()) - i128(energy_diagonal(n - 1, s).raw());
    return diff == i128(n) - 2;
}

namespace {

bool has_suite(const SuiteConfig& cfg, Suite s) {
    return std::find(cfg.suites.begin(), cfg.suites.end(), s) != cfg.suites.end();
}

struct SuiteRunner {
    const SuiteConfig& cfg;
    const SpfTable& spf;
    SummatorySigma ssigma;
    CheckContext cx;
    VerificationReport report;

    SuiteRunner(const SuiteConfig& c, const SpfTable& t) : cfg(c), spf(t) {
        if (has_suite(cfg, Suite::diagonal) || has_suite(cfg, Suite::primality)) {
            u64 bound = std::max<u64>(cfg.max_n, 2);
            if (cfg.random_cases > 0) bound = std::max(bound, kRandMaxNDiagonal);
            if (bound > spf.bound)
                throw RangeExceeded(
                    "run_suite: diagonal/primality suites need a sieve of bound " + num(bound) +
                    ", have " + num(spf.bound));
            ssigma = summatory_sigma(bound, spf);
        }
        cx = CheckContext{&spf, &ssigma, cfg.fault_bias};
        report.config = cfg;
    }

    void record(const IdentityCheck& c) {
        auto& totals = report.totals[c.id];
        if (c.passed) {
            ++totals.passed;
        } else {
            ++totals.failed;
            ++report.failures;
        }
        if (!c.passed || cfg.include_passes) report.checks.push_back(c);
    }

    void run_bounds(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 0; n <= cfg.max_n; ++n) record(check_extremal(m, n, cx));
        // random phase walks the actual extremal classes at large n
        for (u64 i = 0; i < cfg.random_cases; ++i) {
            const u64 m = 1 + rng.below(kRandMaxMBounds);
            const u64 lcm = lcm_upto(m).value.as_u64();
            const u64 j = 1 + rng.below(std::min<u64>(kInputCap / lcm, 8));
            const u64 base = j * lcm;
            record(check_extremal(m, base, cx));
            record(check_extremal(m, base - 1, cx));
            record(check_extremal(m, base + 1 + rng.below(lcm > 2 ? lcm - 2 : 1), cx));
        }
    }

    void run_symmetry(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (i128 n = -i128(cfg.max_n); n <= i128(cfg.max_n); ++n)
                record(check_complementary(m, n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i) {
            const u64 m = 1 + rng.below(kRandMaxM);
            i128 n = i128(rng.below(kRandMaxN));
            if (rng.next() & 1) n = -n;
            record(check_complementary(m, n, cx));
        }
    }

    void run_floor_sum(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 0; n <= cfg.max_n; ++n) record(check_floor_sum(m, n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i)
            record(check_floor_sum(1 + rng.below(kRandMaxM), rng.below(kRandMaxN), cx));
    }

    void run_divisor_sum(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 1; n <= cfg.max_n; ++n) record(check_divisor_sum(m, n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i)
            record(check_divisor_sum(1 + rng.below(kRandMaxM),
                                     1 + rng.below(std::min(kRandMaxNDivisorSum, spf.bound)), cx));
    }

    void run_grouping(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 0; n <= cfg.max_n; ++n) record(check_grouping(m, n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i)
            record(check_grouping(1 + rng.below(kRandMaxMGrouping), rng.below(kRandMaxN), cx));
    }

    void run_regimes(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 1; n <= cfg.max_n; ++n) record(check_regimes(m, n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i)
            record(check_regimes(1 + rng.below(kRandMaxM), 1 + rng.below(kRandMaxN), cx));
    }

    void run_diagonal(SplitMix64& rng) {
        for (u64 n = 1; n <= cfg.max_n; ++n) record(check_diagonal(n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i)
            record(check_diagonal(1 + rng.below(ssigma.bound), cx));
    }

    void run_congruence(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 0; n <= cfg.max_n; ++n)
                for (u64 t = 1; t <= cfg.max_t; ++t) record(check_congruences(m, n, t, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i) {
            record(check_congruences(1 + rng.below(kRandMaxM), rng.below(kRandMaxN),
                                     1 + rng.below(cfg.max_t), cx));
        }
    }

    void run_recursion(SplitMix64& rng) {
        for (u64 m = 1; m <= cfg.max_m; ++m)
            for (u64 n = 0; n <= cfg.max_n; ++n)
                record(check_recursions(m, n, rng.below(m + 1), cx));
        for (u64 i = 0; i < cfg.random_cases; ++i) {
            const u64 m = 1 + rng.below(kRandMaxM);
            const u64 n = rng.below(std::min(kRandMaxNRecursion, spf.bound) - 1);
            record(check_recursions(m, n, rng.below(m + 1), cx));
        }
    }

    void run_periodicity(SplitMix64& rng) {
        const u64 m_cap = std::min(cfg.max_m, kPeriodicityMaxM);
        for (u64 m = 1; m <= m_cap; ++m)
            for (u64 n = 0; n <= cfg.max_n; ++n)
                record(check_periodicity(m, n, 1 + rng.below(m), cx));
        for (u64 i = 0; i < cfg.random_cases; ++i) {
            const u64 m = 1 + rng.below(m_cap);
            record(check_periodicity(m, rng.below(kRandMaxN), 1 + rng.below(m), cx));
        }
    }

    void run_primality(SplitMix64& rng) {
        for (u64 n = 2; n <= std::max<u64>(cfg.max_n, 2); ++n) record(check_primality(n, cx));
        for (u64 i = 0; i < cfg.random_cases; ++i)
            record(check_primality(2 + rng.below(ssigma.bound - 1), cx));
    }

    void run_prime_claims() {
        for (u64 p = 2; p <= cfg.max_m; ++p) {
            if (!trial_prime(p)) continue;
            // sub-p values exercise the m < p branch of the n-prime identity
            std::vector<u64> others = {1, p / 2, p - 1};
            for (u64 j = 1; j <= kPrimeClaimsMaxJ; ++j) others.push_back(p * j);
            others.erase(std::remove(others.begin(), others.end(), u64{0}), others.end());
            std::sort(others.begin(), others.end());
            others.erase(std::unique(others.begin(), others.end()), others.end());
            for (u64 other : others) {
                auto res = check_prime_claims(p, other, cx);
                record(res.check);
                if (res.finding) report.findings.push_back(*res.finding);
            }
        }
    }

    void run() {
        for (Suite s : kAllSuites) {
            if (!has_suite(cfg, s)) continue;
            SplitMix64 rng(cfg.seed ^ (u64(s) * 0x517cc1b727220a95ULL + 1));
            switch (s) {
                case Suite::bounds: run_bounds(rng); break;
                case Suite::symmetry: run_symmetry(rng); break;
                case Suite::floor_sum: run_floor_sum(rng); break;
                case Suite::divisor_sum: run_divisor_sum(rng); break;
                case Suite::grouping: run_grouping(rng); break;
                case Suite::regimes: run_regimes(rng); break;
                case Suite::diagonal: run_diagonal(rng); break;
                case Suite::congruence: run_congruence(rng); break;
                case Suite::recursion: run_recursion(rng); break;
                case Suite::periodicity: run_periodicity(rng); break;
                case Suite::primality: run_primality(rng); break;
                case Suite::prime_claims: run_prime_claims(); break;
            }
        }
    }
};

}  // namespace

u64 suite_required_sieve_bound(const SuiteConfig& cfg) {
    u64 bound = 2;
    const bool random = cfg.random_cases > 0;
    if (has_suite(cfg, Suite::divisor_sum))
        bound = std::max(bound, random ? kRandMaxNDivisorSum : cfg.max_n);
    if (has_suite(cfg, Suite::recursion))
        bound = std::max(bound, random ? kRandMaxNRecursion : cfg.max_n + 1);
    if (has_suite(cfg, Suite::diagonal) || has_suite(cfg, Suite::primality))
        bound = std::max(bound, random ? kRandMaxNDiagonal : cfg.max_n);
    return std::max(bound, cfg.max_n + 1);
}

VerificationReport run_suite(const SuiteConfig& config, const SpfTable& t) {
    SuiteRunner runner(config, t);
    runner.run();
    return runner.report;
}

std::string report_to_json(const VerificationReport& report, int indent) {
    nlohmann::json j;
    j["seed"] = report.config.seed;

    nlohmann::json cfg;
    cfg["max_m"] = report.config.max_m;
    cfg["max_n"] = report.config.max_n;
    cfg["max_t"] = report.config.max_t;
    cfg["random_cases"] = report.config.random_cases;
    cfg["include_passes"] = report.config.include_passes;
    if (report.config.fault_bias != 0) cfg["fault_bias"] = report.config.fault_bias;
    auto suites = nlohmann::json::array();
    for (Suite s : report.config.suites) suites.push_back(std::string(suite_name(s)));
    cfg["suites"] = suites;
    j["config"] = cfg;

    auto checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json jc;
        jc["id"] = std::string(suite_name(c.id));
        jc["params"] = c.params;
        jc["passed"] = c.passed;
        if (c.witness) jc["witness"] = *c.witness;
        checks.push_back(jc);
    }
    j["checks"] = checks;

    auto findings = nlohmann::json::array();
    for (const auto& f : report.findings) {
        nlohmann::json jf;
        jf["claim"] = f.claim;
        jf["p"] = f.p;
        jf["n"] = f.n;
        jf["energy"] = f.energy.str();
        jf["residue"] = f.residue;
        findings.push_back(jf);
    }
    j["findings"] = findings;

    nlohmann::json totals = nlohmann::json::object();
    for (const auto& [s, tt] : report.totals)
        totals[std::string(suite_name(s))] = {{"pass", tt.passed}, {"fail", tt.failed}};
    j["totals"] = totals;

    return j.dump(indent);
}

}  // namespace modenergy
