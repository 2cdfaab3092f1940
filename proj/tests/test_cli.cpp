#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"

// Black-box tests of the built binary: every assertion here goes through
// argv, stdout and the exit code only.

using oracle::u64;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CLI_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, sep)) out.push_back(token);
    return out;
}

}  // namespace

TEST_CASE("eval prints the worked examples exactly") {
    auto r1 = run("eval --m 5 --n 12");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == "2\n");

    auto r2 = run("eval --m 6 --n 7");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == "8\n");

    auto r3 = run("eval --m 1 --n 999");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out == "0\n");
}

TEST_CASE("eval agrees across every algorithm flag") {
    const std::string algos[] = {"naive", "grouped", "block", "divisor-batch", "diagonal"};
    for (const auto& algo : algos) {
        auto r = run("eval --m 360 --n 360 --algo " + algo);
        CHECK(r.exit_code == 0);
        CHECK(r.out == std::to_string(u64(oracle::energy_direct(360, 360))) + "\n");
    }
    auto big = run("eval --m 1000000000 --n 1000000000 --algo grouped");
    CHECK(big.exit_code == 0);
    auto blocked = run("eval --m 1000000000 --n 1000000000 --algo block --naive-cap 0");
    CHECK(blocked.exit_code == 2);  // --naive-cap belongs to bench
}

TEST_CASE("eval usage and capacity errors") {
    CHECK(run("eval --m 0 --n 5").exit_code == 2);
    CHECK(run("eval --n 5").exit_code == 2);
    CHECK(run("eval --m 2 --n 5 --algo nosuch").exit_code == 2);
    CHECK(run("eval --m 4 --n 5 --algo diagonal").exit_code == 2);  // needs m = n
    CHECK(run("nosuchcommand").exit_code == 2);
    // beyond the 2^63 - 1 input cap
    CHECK(run("eval --m 9223372036854775808 --n 1").exit_code == 3);
    // diagonal beyond the sieve flag
    CHECK(run("eval --m 50000 --n 50000 --algo diagonal --sieve-bound 1000").exit_code == 3);
}

TEST_CASE("eval csv and json round-trip") {
    auto csv = run("eval --m 5 --n 12 --format csv");
    CHECK(csv.exit_code == 0);
    auto lines = split(csv.out, '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "m,n,value,algo");
    auto fields = split(lines[1], ',');
    REQUIRE(fields.size() == 4);
    CHECK(fields[0] == "5");
    CHECK(fields[1] == "12");
    CHECK(fields[2] == "2");
    CHECK(fields[3] == "naive");

    auto js = run("eval --m 5000 --n 123456 --format json");
    CHECK(js.exit_code == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["m"] == 5000);
    CHECK(j["n"] == 123456);
    CHECK(j["algo"] == "grouped");
    CHECK(j["value"] == std::to_string(u64(oracle::energy_direct(5000, 123456))));
    CHECK(j.contains("elapsed_ns"));
}

TEST_CASE("range streams the finite-difference walk") {
    auto r = run("range --m 6 --n-start 6 --n-end 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "6 3\n7 8\n");

    auto single = run("range --m 4 --n-start 12 --n-end 12");
    CHECK(single.exit_code == 0);
    CHECK(single.out == "12 0\n");
}

TEST_CASE("range csv parses back losslessly and matches the oracle") {
    auto r = run("range --m 50 --n-start 1 --n-end 1000 --format csv");
    CHECK(r.exit_code == 0);
    auto lines = split(r.out, '\n');
    REQUIRE(lines.size() == 1001);  // header + 1000 rows
    CHECK(lines[0] == "m,n,value");
    u64 state = 2024;
    for (int i = 0; i < 10; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const u64 idx = 1 + (state >> 33) % 1000;
        const auto fields = split(lines[idx], ',');
        REQUIRE(fields.size() == 3);
        CHECK(fields[0] == "50");
        CHECK(std::stoull(fields[1]) == idx);
        CHECK(fields[2] == std::to_string(u64(oracle::energy_direct(50, idx))));
    }
}

TEST_CASE("range caps produce exit 3") {
    CHECK(run("range --m 6 --n-start 1 --n-end 100 --sieve-bound 50").exit_code == 3);
    CHECK(run("range --m 6 --n-start 9 --n-end 3").exit_code == 2);
}

TEST_CASE("verify: clean run exits 0 and records the claim findings") {
    auto r = run("verify --suites all --max-m 24 --max-n 24 --seed 0 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["checks"].empty());
    bool has_3_3 = false;
    for (const auto& f : j["findings"])
        if (f["p"] == 3 && f["n"] == 3 && f["energy"] == "1") has_3_3 = true;
    CHECK(has_3_3);
    for (const auto& [name, totals] : j["totals"].items()) {
        CHECK(totals["fail"] == 0);
        CHECK(totals["pass"] > 0);
    }
    CHECK(j["totals"].size() == 12);
}

TEST_CASE("verify: unknown suite name exits 2") {
    CHECK(run("verify --suites nosuch").exit_code == 2);
    CHECK(run("verify --suites diagonal,alsonot --max-n 32").exit_code == 2);
}

TEST_CASE("verify: single suite selection") {
    auto r = run("verify --suites diagonal --max-n 1000 --format csv");
    CHECK(r.exit_code == 0);
    auto lines = split(r.out, '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "id,pass,fail");
    const auto fields = split(lines[1], ',');
    REQUIRE(fields.size() == 3);
    CHECK(fields[0] == "diagonal");
    CHECK(fields[2] == "0");
}

TEST_CASE("verify output is deterministic for a fixed seed") {
    const std::string cmd =
        "verify --suites symmetry,grouping,prime-claims --max-m 16 --max-n 16 --seed 9 "
        "--format json";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("prime verdicts with evidence") {
    auto p = run("prime --n 13");
    CHECK(p.exit_code == 0);
    CHECK(p.out.find("13 is prime") != std::string::npos);
    CHECK(p.out.find("sigma(n) = 14") != std::string::npos);

    auto two = run("prime --n 2 --format json");
    CHECK(two.exit_code == 0);
    const auto j = nlohmann::json::parse(two.out);
    CHECK(j["prime"] == true);
    CHECK(j["diagonal_diff"] == "0");

    auto c = run("prime --n 9991");  // 97 * 103
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("9991 is composite") != std::string::npos);

    CHECK(run("prime --n 1").exit_code == 2);
    CHECK(run("prime --n 50000 --sieve-bound 1000").exit_code == 3);
}

TEST_CASE("table audit flags the reference mismatches") {
    auto r = run("table --n-max 20");
    CHECK(r.exit_code == 0);
    auto lines = split(r.out, '\n');
    REQUIRE(lines.size() >= 21);
    CHECK(lines[0] == "n=1 computed=0 reference=0 MATCH");
    CHECK(lines[2] == "n=3 computed=1 reference=1 MATCH");
    CHECK(lines[3] == "n=4 computed=1 reference=4 MISMATCH");
    CHECK(lines[20].find("audit: 17 of 20") != std::string::npos);

    auto j = nlohmann::json::parse(run("table --n-max 25 --format json").out);
    CHECK(j["mismatches"] == 17);
    CHECK(j["reference_rows"] == 20);
    CHECK(j["rows"].size() == 25);
    CHECK_FALSE(j["rows"][24].contains("reference"));
}

TEST_CASE("bench rows carry work counters and agree on values") {
    auto r = run("bench --sizes 100,64x200 --reps 3 --format csv");
    CHECK(r.exit_code == 0);
    auto lines = split(r.out, '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "algo,m,n,reps,median_ns,work");
    int grouped_rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        REQUIRE(f.size() == 6);
        if (f[0] == "grouped") {
            ++grouped_rows;
            const u64 n = std::stoull(f[2]);
            u64 root = 0;
            while ((root + 1) * (root + 1) <= n) ++root;
            if (root * root < n) ++root;
            CHECK(std::stoull(f[5]) <= 2 * root + 2);
        }
    }
    CHECK(grouped_rows == 2);

    auto j = nlohmann::json::parse(run("bench --sizes 100 --reps 3 --format json").out);
    std::string value;
    for (const auto& row : j["rows"]) {
        if (value.empty()) value = row["value"];
        CHECK(row["value"] == value);
    }
    CHECK(j["rows"].size() == 5);  // all five algorithms run at m = n = 100
}

TEST_CASE("bench skips infeasible algorithms and documents why") {
    auto r = run("bench --sizes 20000000 --reps 3 --naive-cap 1000000 --sieve-bound 1000000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("algo=naive m=20000000 n=20000000 skipped:") != std::string::npos);
    CHECK(r.out.find("algo=grouped m=20000000") != std::string::npos);
    CHECK(r.out.find("naive-cap") != std::string::npos);

    CHECK(run("bench --sizes abc --reps 3").exit_code == 2);
    CHECK(run("bench --sizes 100 --reps 2").exit_code == 2);
}
