#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modenergy/energy.hpp"
#include "modenergy/sieve.hpp"

namespace modenergy {

// check_prime_claims was handed a composite p.
struct NotPrime : std::invalid_argument {
    explicit NotPrime(const std::string& what) : std::invalid_argument(what) {}
};

enum class Suite {
    bounds,
    symmetry,
    floor_sum,
    divisor_sum,
    grouping,
    diagonal,
    congruence,
    recursion,
    regimes,
    periodicity,
    primality,
    prime_claims,
};

inline constexpr Suite kAllSuites[] = {
    Suite::bounds,   Suite::symmetry,    Suite::floor_sum,   Suite::divisor_sum,
    Suite::grouping, Suite::diagonal,    Suite::congruence,  Suite::recursion,
    Suite::regimes,  Suite::periodicity, Suite::primality,   Suite::prime_claims,
};

std::string_view suite_name(Suite s);
std::optional<Suite> suite_from_name(std::string_view name);

struct IdentityCheck {
    Suite id{};
    std::string params;  // canonical "m=..,n=.." key order
    bool passed = true;
    std::optional<std::string> witness;  // set exactly when passed is false
};

// A claim contradicted by computation. Findings are reported, never asserted:
// they flag the claim, not the implementation.
struct Finding {
    std::string claim;
    u64 p = 0;
    u64 n = 0;
    WideInt energy;
    u64 residue = 0;  // energy mod p, nonzero in every recorded finding
};

// counts[r] = #{1 <= k <= m : (n mod k) ≡ r (mod t)}, multiples = floor(m/t)
struct ResidueBlockCount {
    u64 m = 0;
    u64 n = 0;
    u64 t = 0;
    std::vector<u64> counts;
    u64 multiples = 0;
};

ResidueBlockCount residue_block_counts(u64 m, u64 n, u64 t);

// Shared state for the individual checks. Each check evaluates one "subject"
// energy (the evaluation under test) against a reference route assembled
// independently; fault_bias is a test hook that offsets the subject so the
// suite's own failure reporting can be exercised.
struct CheckContext {
    const SpfTable* spf = nullptr;
    const SummatorySigma* ssigma = nullptr;
    u64 fault_bias = 0;

    WideInt subject(u64 m, u64 n) const { return energy_naive(m, n) + WideInt(fault_bias); }
    WideInt subject_signed(u64 m, i128 n) const {
        return energy_signed(m, n) + WideInt(fault_bias);
    }
};

// 0 <= E <= m(m-1)/2, with E = 0 iff lcm(1..m) | n and
// E = m(m-1)/2 iff n ≡ -1 (mod lcm(1..m)). Throws OverflowError when the
// lcm leaves 128 bits.
IdentityCheck check_extremal(u64 m, u64 n, const CheckContext& cx);

// E_m(n) + E_m(-n-1) = m(m-1)/2
IdentityCheck check_complementary(u64 m, i128 n, const CheckContext& cx);

// E_m(n) = mn - sum_k k*floor(n/k)
IdentityCheck check_floor_sum(u64 m, u64 n, const CheckContext& cx);

// E_m(n) = mn - sum_{d<=n} sigma_{<=m}(d)
IdentityCheck check_divisor_sum(u64 m, u64 n, const CheckContext& cx);

// energy_grouped matches the subject, and quotient_blocks really is an
// ordered gap-free partition with constant maximal quotients.
IdentityCheck check_grouping(u64 m, u64 n, const CheckContext& cx);

// E_n(n) = n^2 - sum_{d<=n} sigma(d)
IdentityCheck check_diagonal(u64 n, const CheckContext& cx);

// (a) E_m(n) ≡ sum_r r * N_{r,t} (mod t); (b) the moduli divisible by t
// contribute ≡ floor(m/t) * n (mod t).
IdentityCheck check_congruences(u64 m, u64 n, u64 t, const CheckContext& cx);

// Three recursions at one point: the finite difference in n, additivity at
// the split m1, and the block recursion at q = floor(n/m), r = n mod m.
IdentityCheck check_recursions(u64 m, u64 n, u64 m1, const CheckContext& cx);

// Regime dispatch: truncation for n < m, quotient decomposition for n > m,
// both for n = m; each compared against the subject.
IdentityCheck check_regimes(u64 m, u64 n, const CheckContext& cx);

// E_m(n + L_m) = E_m(n), plus L_{m1} | L_m for the sampled m1 < m.
IdentityCheck check_periodicity(u64 m, u64 n, u64 m1, const CheckContext& cx);

// is_prime_via_energy agrees with trial division, and the diagonal
// difference equals (2n-1) - sigma(n).
IdentityCheck check_primality(u64 n, const CheckContext& cx);

struct PrimeClaimResult {
    IdentityCheck check;              // sub-check A: the n-prime identities
    std::optional<Finding> finding;   // sub-check B: congruence audit outcome
};

// Sub-check A verifies E_m(p) = E_p(p) + (m-p)p for m >= p and the direct
// floor-sum form for m < p, with m = other. Sub-check B evaluates the
// congruence claim "p | n implies p | E_p(n)" at n = other and records a
// finding when the claim fails; the claim is false (p=3, n=3 gives E=1),
// so violations are audit findings, not check failures.
PrimeClaimResult check_prime_claims(u64 p, u64 other, const CheckContext& cx);

// True iff E_n(n) - E_{n-1}(n-1) = n - 2, which holds exactly for primes.
bool is_prime_via_energy(u64 n, const SummatorySigma& s);

struct SuiteConfig {
    std::vector<Suite> suites;
    u64 max_m = 64;
    u64 max_n = 64;
    u64 max_t = 12;
    u64 seed = 0;
    u64 random_cases = 32;      // per suite, sampled above the exhaustive grid
    bool include_passes = false;
    u64 fault_bias = 0;         // test hook, not exposed on the CLI
};

struct SuiteTotals {
    u64 passed = 0;
    u64 failed = 0;
};

struct VerificationReport {
    SuiteConfig config;
    std::vector<IdentityCheck> checks;  // failures, plus passes when include_passes
    std::vector<Finding> findings;
    std::map<Suite, SuiteTotals> totals;
    u64 failures = 0;
};

// Smallest sieve bound run_suite needs for this config.
u64 suite_required_sieve_bound(const SuiteConfig& config);

// Exhaustive grids up to the configured bounds plus a seeded random phase at
// larger inputs. Checks run in a fixed order, so the report is deterministic
// for a given config and seed.
VerificationReport run_suite(const SuiteConfig& config, const SpfTable& t);

// Canonical JSON form (stable key order); indent < 0 emits compact JSON.
std::string report_to_json(const VerificationReport& report, int indent = -1);

}  // namespace modenergy
