#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "modenergy/identities.hpp"

using namespace modenergy;

namespace {

// eval auto-selection: naive is unbeatable while the O(m) loop stays tiny;
// grouped takes over beyond this (benchmark-tunable, see the bench command).
constexpr u64 kNaiveAutoThreshold = 4096;
constexpr u64 kRangeLengthCap = 100'000'000;
constexpr u64 kDefaultSieveBound = 10'000'000;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kCapacity = 3 };

struct GlobalOpts {
    std::string format = "text";
    u64 sieve_bound = kDefaultSieveBound;
    u64 seed = 0;
};

u64 now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Sieve sized to what the command actually needs, limited by --sieve-bound.
SpfTable make_sieve(u64 needed, const GlobalOpts& g) {
    if (needed > g.sieve_bound)
        throw RangeExceeded("needs a sieve of bound " + std::to_string(needed) +
                            ", above --sieve-bound " + std::to_string(g.sieve_bound));
    return build_spf(std::max<u64>(needed, 2));
}

// ---------------------------------------------------------------- eval ----

int cmd_eval(const GlobalOpts& g, u64 m, u64 n, std::string algo) {
    if (algo == "auto") algo = (m <= kNaiveAutoThreshold) ? "naive" : "grouped";
    if (algo == "diagonal" && m != n) {
        std::cerr << "eval: --algo diagonal requires m = n\n";
        return kUsage;
    }
    if ((algo == "diagonal" || algo == "divisor-batch") && n < 1) {
        std::cerr << "eval: --algo " << algo << " requires n >= 1\n";
        return kUsage;
    }

    std::optional<SpfTable> sieve;
    std::optional<SummatorySigma> ssigma;
    if (algo == "divisor-batch") sieve = make_sieve(n, g);
    if (algo == "diagonal") {
        sieve = make_sieve(n, g);
        ssigma = summatory_sigma(n, *sieve);
    }

    WideInt value;
    const u64 t0 = now_ns();
    if (algo == "naive") {
        value = energy_naive(m, n);
    } else if (algo == "grouped") {
        value = energy_grouped(m, n);
    } else if (algo == "block") {
        value = energy_block(m, n / m, n % m, energy_grouped(m, m));
    } else if (algo == "divisor-batch") {
        value = energy_divisor_batch(m, n, *sieve);
    } else {  // diagonal
        value = energy_diagonal(n, *ssigma);
    }
    const u64 elapsed = now_ns() - t0;

    if (g.format == "text") {
        std::cout << value.str() << "\n";
    } else if (g.format == "csv") {
        std::cout << "m,n,value,algo\n"
                  << m << "," << n << "," << value.str() << "," << algo << "\n";
    } else {
        nlohmann::json j;
        j["m"] = m;
        j["n"] = n;
        j["value"] = value.str();
        j["algo"] = algo;
        j["elapsed_ns"] = elapsed;
        std::cout << j.dump(2) << "\n";
    }
    return kOk;
}

// --------------------------------------------------------------- range ----

int cmd_range(const GlobalOpts& g, u64 m, u64 n_start, u64 n_end) {
    if (n_start > n_end) {
        std::cerr << "range: --n-start must not exceed --n-end\n";
        return kUsage;
    }
    if (n_end - n_start + 1 > kRangeLengthCap)
        throw RangeExceeded("range length exceeds the cap of " + std::to_string(kRangeLengthCap));
    const SpfTable sieve = make_sieve(n_end, g);

    if (g.format == "csv") std::cout << "m,n,value\n";
    if (g.format == "json") std::cout << "[\n";
    bool first = true;
    energy_range_stream(m, n_start, n_end, sieve, [&](u64 n, WideInt v) {
        if (g.format == "text") {
            std::cout << n << " " << v.str() << "\n";
        } else if (g.format == "csv") {
            std::cout << m << "," << n << "," << v.str() << "\n";
        } else {
            if (!first) std::cout << ",\n";
            std::cout << "{\"m\":" << m << ",\"n\":" << n << ",\"value\":\"" << v.str() << "\"}";
            first = false;
        }
    });
    if (g.format == "json") std::cout << "\n]\n";
    return kOk;
}

// -------------------------------------------------------------- verify ----

int cmd_verify(const GlobalOpts& g, const std::string& suites_arg, u64 max_m, u64 max_n,
               u64 max_t, u64 random_cases, bool include_passes) {
    SuiteConfig cfg;
    cfg.max_m = max_m;
    cfg.max_n = max_n;
    cfg.max_t = max_t;
    cfg.seed = g.seed;
    cfg.random_cases = random_cases;
    cfg.include_passes = include_passes;

    std::string token;
    for (std::size_t i = 0; i <= suites_arg.size(); ++i) {
        if (i < suites_arg.size() && suites_arg[i] != ',') {
            token += suites_arg[i];
            continue;
        }
        if (token.empty()) continue;
        if (token == "all") {
            cfg.suites.assign(std::begin(kAllSuites), std::end(kAllSuites));
        } else if (auto s = suite_from_name(token)) {
            cfg.suites.push_back(*s);
        } else {
            std::cerr << "verify: unknown suite '" << token << "'\n";
            return kUsage;
        }
        token.clear();
    }

    const SpfTable sieve = make_sieve(suite_required_sieve_bound(cfg), g);
    const VerificationReport report = run_suite(cfg, sieve);

    if (g.format == "json") {
        std::cout << report_to_json(report, 2) << "\n";
    } else if (g.format == "csv") {
        std::cout << "id,pass,fail\n";
        for (const auto& [s, t] : report.totals)
            std::cout << suite_name(s) << "," << t.passed << "," << t.failed << "\n";
    } else {
        for (const auto& c : report.checks)
            if (!c.passed)
                std::cout << "FAIL " << suite_name(c.id) << " [" << c.params << "] "
                          << c.witness.value_or("") << "\n";
        std::cout << "suite totals:\n";
        for (const auto& [s, t] : report.totals)
            std::cout << "  " << suite_name(s) << " pass=" << t.passed << " fail=" << t.failed
                      << "\n";
        if (!report.findings.empty()) {
            std::cout << "findings (claim audits, not failures):\n";
            for (const auto& f : report.findings)
                std::cout << "  " << f.claim << " p=" << f.p << " n=" << f.n
                          << " E=" << f.energy.str() << " residue=" << f.residue << "\n";
        }
        std::cout << "implementation failures: " << report.failures << "\n";
    }
    return report.failures == 0 ? kOk : kCheckFailed;
}

// --------------------------------------------------------------- prime ----

int cmd_prime(const GlobalOpts& g, u64 n) {
    const SpfTable sieve = make_sieve(n, g);
    const SummatorySigma ssigma = summatory_sigma(n, sieve);
    const bool prime = is_prime_via_energy(n, ssigma);
    const WideInt sigma_n = sigma(n, sieve);
    const i128 diff =
        i128(energy_diagonal(n, ssigma).raw()) - i128(energy_diagonal(n - 1, ssigma).raw());

    if (g.format == "text") {
        std::cout << n << " is " << (prime ? "prime" : "composite") << ": sigma(n) = "
                  << sigma_n.str() << ", E_n(n) - E_{n-1}(n-1) = " << to_string_i128(diff)
                  << ", n - 2 = " << n - 2 << "\n";
    } else if (g.format == "csv") {
        std::cout << "n,verdict,sigma,diagonal_diff\n"
                  << n << "," << (prime ? "prime" : "composite") << "," << sigma_n.str() << ","
                  << to_string_i128(diff) << "\n";
    } else {
        nlohmann::json j;
        j["n"] = n;
        j["prime"] = prime;
        j["sigma"] = sigma_n.str();
        j["diagonal_diff"] = to_string_i128(diff);
        std::cout << j.dump(2) << "\n";
    }
    return kOk;
}

// --------------------------------------------------------------- table ----

// Embedded reference diagonal values audited by the table command. The list
// is known to disagree with the defining sum from n = 4 onward; the audit
// prints both sides and counts the mismatches.
constexpr u64 kReferenceDiagonal[21] = {0,  0,   0,   1,   4,   8,   18,  24,  40,  54, 80,
                                        110, 168, 156, 180, 216, 256, 272, 378, 342, 520};

int cmd_table(const GlobalOpts& g, u64 n_max) {
    const SpfTable sieve = make_sieve(std::max<u64>(n_max, 2), g);
    const SummatorySigma ssigma = summatory_sigma(n_max, sieve);

    u64 mismatches = 0;
    u64 reference_rows = 0;
    nlohmann::json rows = nlohmann::json::array();
    if (g.format == "csv") std::cout << "n,computed,reference,match\n";

    for (u64 n = 1; n <= n_max; ++n) {
        const WideInt computed = energy_diagonal(n, ssigma);
        if (computed != energy_naive(n, n)) {
            std::cerr << "table: diagonal value at n=" << n << " failed the naive cross-check\n";
            return kCheckFailed;
        }
        const bool has_ref = n <= 20;
        const u64 ref = has_ref ? kReferenceDiagonal[n] : 0;
        const bool match = has_ref && computed == WideInt(ref);
        if (has_ref) {
            ++reference_rows;
            if (!match) ++mismatches;
        }

        if (g.format == "text") {
            std::cout << "n=" << n << " computed=" << computed.str();
            if (has_ref)
                std::cout << " reference=" << ref << (match ? " MATCH" : " MISMATCH");
            std::cout << "\n";
        } else if (g.format == "csv") {
            std::cout << n << "," << computed.str() << ",";
            if (has_ref)
                std::cout << ref << "," << (match ? "MATCH" : "MISMATCH");
            else
                std::cout << ",";
            std::cout << "\n";
        } else {
            nlohmann::json row;
            row["n"] = n;
            row["computed"] = computed.str();
            if (has_ref) {
                row["reference"] = ref;
                row["match"] = match;
            }
            rows.push_back(row);
        }
    }

    if (g.format == "text") {
        std::cout << "audit: " << mismatches << " of " << reference_rows
                  << " reference values mismatch the computed diagonal\n";
    } else if (g.format == "json") {
        nlohmann::json j;
        j["rows"] = rows;
        j["reference_rows"] = reference_rows;
        j["mismatches"] = mismatches;
        std::cout << j.dump(2) << "\n";
    }
    return kOk;
}

// --------------------------------------------------------------- bench ----

struct BenchRow {
    std::string algo;
    u64 m = 0;
    u64 n = 0;
    u64 reps = 0;
    u64 median_ns = 0;
    u64 work = 0;
    WideInt value;
};

struct BenchSkip {
    std::string algo;
    u64 m = 0;
    u64 n = 0;
    std::string reason;
};

bool parse_sizes(const std::string& arg, std::vector<std::pair<u64, u64>>& out) {
    std::string token;
    for (std::size_t i = 0; i <= arg.size(); ++i) {
        if (i < arg.size() && arg[i] != ',') {
            token += arg[i];
            continue;
        }
        if (token.empty()) continue;
        try {
            const auto x = token.find('x');
            if (x == std::string::npos) {
                const u64 n = std::stoull(token);
                out.emplace_back(n, n);
            } else {
                out.emplace_back(std::stoull(token.substr(0, x)),
                                 std::stoull(token.substr(x + 1)));
            }
        } catch (const std::exception&) {
            return false;
        }
        token.clear();
    }
    return !out.empty();
}

template <class Fn>
BenchRow bench_one(std::string algo, u64 m, u64 n, u64 reps, u64 work, Fn&& fn) {
    BenchRow row{std::move(algo), m, n, reps, 0, work, WideInt(0)};
    std::vector<u64> timings;
    timings.reserve(reps);
    for (u64 r = 0; r < reps; ++r) {
        const u64 t0 = now_ns();
        row.value = fn();
        timings.push_back(now_ns() - t0);
    }
    std::sort(timings.begin(), timings.end());
    row.median_ns = timings[reps / 2];
    return row;
}

int cmd_bench(const GlobalOpts& g, const std::string& sizes_arg, u64 reps, u64 naive_cap) {
    std::vector<std::pair<u64, u64>> sizes;
    if (!parse_sizes(sizes_arg, sizes)) {
        std::cerr << "bench: --sizes wants a comma list of N or MxN entries\n";
        return kUsage;
    }

    u64 sieve_need = 0;
    for (const auto& [m, n] : sizes)
        if (n >= 1 && n <= g.sieve_bound) sieve_need = std::max(sieve_need, n);
    std::optional<SpfTable> sieve;
    std::optional<SummatorySigma> ssigma;
    if (sieve_need > 0) {
        sieve = make_sieve(sieve_need, g);
        u64 diag_need = 0;
        for (const auto& [m, n] : sizes)
            if (m == n && n >= 1 && n <= g.sieve_bound) diag_need = std::max(diag_need, n);
        if (diag_need > 0) ssigma = summatory_sigma(diag_need, *sieve);
    }

    std::vector<BenchRow> rows;
    std::vector<BenchSkip> skips;
    for (const auto& [m, n] : sizes) {
        std::vector<BenchRow> group;

        if (m <= naive_cap) {
            group.push_back(bench_one("naive", m, n, reps, m, [&] { return energy_naive(m, n); }));
        } else {
            skips.push_back({"naive", m, n,
                             "m exceeds --naive-cap " + std::to_string(naive_cap) +
                                 "; the O(m) loop is out of the bench budget"});
        }

        GroupedStats stats;
        group.push_back(
            bench_one("grouped", m, n, reps, 0, [&] { return energy_grouped(m, n, &stats); }));
        group.back().work = stats.blocks;

        if (m <= naive_cap) {
            const WideInt e_mm = energy_grouped(m, m);
            group.push_back(bench_one("block", m, n, reps, m, [&] {
                return energy_block(m, n / m, n % m, e_mm);
            }));
        } else {
            skips.push_back({"block", m, n,
                             "m exceeds --naive-cap " + std::to_string(naive_cap) +
                                 "; the O(m) correction sum is out of the bench budget"});
        }

        if (n >= 1 && n <= g.sieve_bound) {
            group.push_back(bench_one("divisor-batch", m, n, reps, n, [&] {
                return energy_divisor_batch(m, n, *sieve);
            }));
        } else {
            skips.push_back({"divisor-batch", m, n,
                             "n outside --sieve-bound " + std::to_string(g.sieve_bound)});
        }

        if (m == n && n >= 1 && n <= g.sieve_bound) {
            group.push_back(
                bench_one("diagonal", m, n, reps, 1, [&] { return energy_diagonal(n, *ssigma); }));
        } else if (m == n) {
            skips.push_back(
                {"diagonal", m, n, "n outside --sieve-bound " + std::to_string(g.sieve_bound)});
        } else {
            skips.push_back({"diagonal", m, n, "requires m = n"});
        }

        for (const auto& row : group) {
            if (row.value != group.front().value) {
                std::cerr << "bench: algorithms disagree at m=" << m << " n=" << n << " ("
                          << row.algo << "=" << row.value.str() << " vs " << group.front().algo
                          << "=" << group.front().value.str() << ")\n";
                return kCheckFailed;
            }
        }
        rows.insert(rows.end(), group.begin(), group.end());
    }

    if (g.format == "csv") {
        std::cout << "algo,m,n,reps,median_ns,work\n";
        for (const auto& r : rows)
            std::cout << r.algo << "," << r.m << "," << r.n << "," << r.reps << "," << r.median_ns
                      << "," << r.work << "\n";
    } else if (g.format == "json") {
        nlohmann::json j;
        auto jr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json row;
            row["algo"] = r.algo;
            row["m"] = r.m;
            row["n"] = r.n;
            row["reps"] = r.reps;
            row["median_ns"] = r.median_ns;
            row["work"] = r.work;
            row["value"] = r.value.str();
            jr.push_back(row);
        }
        j["rows"] = jr;
        auto js = nlohmann::json::array();
        for (const auto& s : skips) {
            nlohmann::json skip;
            skip["algo"] = s.algo;
            skip["m"] = s.m;
            skip["n"] = s.n;
            skip["reason"] = s.reason;
            js.push_back(skip);
        }
        j["skipped"] = js;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : rows)
            std::cout << "algo=" << r.algo << " m=" << r.m << " n=" << r.n << " reps=" << r.reps
                      << " median_ns=" << r.median_ns << " work=" << r.work
                      << " value=" << r.value.str() << "\n";
        for (const auto& s : skips)
            std::cout << "algo=" << s.algo << " m=" << s.m << " n=" << s.n
                      << " skipped: " << s.reason << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"modenergy: the remainder sum E_m(n) = sum_{k=1}^{m} (n mod k)"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--sieve-bound", g.sieve_bound,
                   "largest sieve the process may build (hard cap 10^8)");
    app.add_option("--seed", g.seed, "seed for sampled verification phases");

    u64 m = 1, n = 0, n_start = 0, n_end = 0, n_max = 20;
    std::string algo = "auto";
    std::string suites = "all";
    u64 max_m = 64, max_n = 64, max_t = 12, random_cases = 32;
    bool include_passes = false;
    std::string sizes;
    u64 reps = 5, naive_cap = kDefaultSieveBound;

    CLI::App* eval = app.add_subcommand("eval", "evaluate E_m(n) once");
    eval->add_option("--m", m, "number of moduli")->required()->check(CLI::PositiveNumber);
    eval->add_option("--n", n, "argument")->required();
    eval->add_option("--algo", algo, "naive | grouped | block | divisor-batch | diagonal")
        ->check(CLI::IsMember({"auto", "naive", "grouped", "block", "divisor-batch", "diagonal"}));

    CLI::App* range = app.add_subcommand("range", "stream E_m(n) over consecutive n");
    range->add_option("--m", m, "number of moduli")->required()->check(CLI::PositiveNumber);
    range->add_option("--n-start", n_start, "first argument")->required();
    range->add_option("--n-end", n_end, "last argument")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the identity verification suites");
    verify->add_option("--suites", suites,
                       "comma list: bounds, symmetry, floor-sum, divisor-sum, grouping, diagonal, "
                       "congruence, recursion, regimes, periodicity, primality, prime-claims, all");
    verify->add_option("--max-m", max_m, "exhaustive grid bound on m");
    verify->add_option("--max-n", max_n, "exhaustive grid bound on n");
    verify->add_option("--max-t", max_t, "congruence modulus bound");
    verify->add_option("--random-cases", random_cases, "sampled large-input cases per suite");
    verify->add_flag("--include-passes", include_passes, "embed passing checks in the report");

    CLI::App* prime = app.add_subcommand("prime", "primality via the diagonal energy difference");
    prime->add_option("--n", n, "integer to test")->required()->check(CLI::Range(u64{2}, ~u64{0}));

    CLI::App* table = app.add_subcommand("table", "diagonal values with the reference-table audit");
    table->add_option("--n-max", n_max, "last diagonal to print")->check(CLI::PositiveNumber);

    CLI::App* bench = app.add_subcommand("bench", "time the evaluation algorithms");
    bench->add_option("--sizes", sizes, "comma list of N (diagonal) or MxN entries")->required();
    bench->add_option("--reps", reps, "repetitions per measurement (>= 3)");
    bench->add_option("--naive-cap", naive_cap, "skip O(m) algorithms above this m");

    for (CLI::App* sub : {eval, range, verify, prime, table, bench}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(g, m, n, algo);
        if (range->parsed()) return cmd_range(g, m, n_start, n_end);
        if (verify->parsed())
            return cmd_verify(g, suites, max_m, max_n, max_t, random_cases, include_passes);
        if (prime->parsed()) return cmd_prime(g, n);
        if (table->parsed()) return cmd_table(g, n_max);
        if (bench->parsed()) {
            if (reps < 3) {
                std::cerr << "bench: --reps must be at least 3\n";
                return kUsage;
            }
            return cmd_bench(g, sizes, reps, naive_cap);
        }
    } catch (const CapExceeded& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const RangeExceeded& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const OverflowError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
