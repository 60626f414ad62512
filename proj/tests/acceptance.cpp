// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// fail. Every numeric claim is checked against arithmetic implemented inside
// this file (trial division, an additive divisor-pair sieve, bitmask subset
// scans, raw mpz recomputation), never against the library's own code paths.

#include <gmpxx.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sigmapow/census.hpp"
#include "sigmapow/certificate.hpp"
#include "sigmapow/smooth.hpp"
#include "sigmapow/verifier.hpp"
#include "sigmapow/witness.hpp"
#include "sigmapow/zerosum.hpp"

using namespace sigmapow;

namespace {

// Pinned limits and expectations. Every tolerance used below lives here.
constexpr double kDeskSeconds = 60.0;       // table to 10^6
constexpr double kLongSeconds = 1800.0;     // table to 10^8
constexpr double kCensusSeconds = 60.0;     // criterion 3 total
constexpr double kConstructSeconds = 300.0; // criterion 6 CLI run
constexpr double kStreamSeconds = 600.0;    // criterion 7
constexpr uint64_t kTableMaxX = 100000000;
const char* kRatioAt1e4 = "2.4285";
const char* kRatioAt1e8 = "1.9940";

// Previously reported counts for N(x; 7, b, 2) and their printed ratios.
struct ReferenceRow {
    uint64_t x, b0, b1;
    const char* ratio;
};
constexpr ReferenceRow kReference[] = {
    {100, 2, 2, "1.0000"},          {1000, 16, 5, "3.2000"},
    {10000, 68, 28, "2.4285"},      {100000, 307, 147, "2.0884"},
    {1000000, 1508, 748, "2.1299"}, {10000000, 7562, 3811, "1.9842"},
    {100000000, 37652, 18882, "1.9940"},
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f s", s);
    return buf;
}

struct CliRun {
    std::string output;
    double seconds = 0.0;
    int exit_code = -1;
};

CliRun run_cli(const std::string& args) {
    CliRun run;
    std::string cmd = std::string(SIGMAPOW_CLI_PATH) + " " + args + " 2>/dev/null";
    auto start = std::chrono::steady_clock::now();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return run;
    char buf[1 << 14];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) run.output.append(buf, got);
    int status = pclose(pipe);
    run.seconds = seconds_since(start);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

// ---- independent arithmetic ------------------------------------------------

bool indep_is_square(uint64_t v, uint64_t* root = nullptr) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    if (root) *root = r;
    return r * r == v;
}

bool indep_is_kth_power(uint64_t v, uint32_t k) {
    mpz_class root, value(static_cast<unsigned long>(v));
    return mpz_root(root.get_mpz_t(), value.get_mpz_t(), k) != 0;
}

uint64_t indep_sigma(uint64_t n) {
    uint64_t total = 0;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            total += d;
            if (d != n / d) total += n / d;
        }
    }
    return total;
}

// Counts of n <= checkpoint with n = 0/1 (mod 7) and sigma(n) a square,
// via an additive divisor-pair sieve: for every d <= sqrt(m) add d + m/d.
std::map<uint64_t, std::array<uint64_t, 2>> oracle_table_counts(
    const std::vector<uint64_t>& checkpoints) {
    uint64_t max_x = checkpoints.back();
    constexpr uint64_t kBlock = 1 << 22;
    std::vector<uint64_t> sig(kBlock);
    std::map<uint64_t, std::array<uint64_t, 2>> result;
    std::array<uint64_t, 2> running{0, 0};
    size_t next_cp = 0;
    uint32_t res = 1 % 7;  // residue of the first n processed
    for (uint64_t lo = 1; lo <= max_x; lo += kBlock) {
        uint64_t hi = std::min(lo + kBlock - 1, max_x);
        size_t len = hi - lo + 1;
        std::fill(sig.begin(), sig.begin() + len, 0);
        for (uint64_t d = 1; d * d <= hi; ++d) {
            uint64_t dd = d * d;
            uint64_t start = std::max(((lo + d - 1) / d) * d, dd);
            uint64_t q = start / d;
            for (uint64_t m = start; m <= hi; m += d, ++q) sig[m - lo] += d + q;
            if (dd >= lo && dd <= hi) sig[dd - lo] -= d;  // d paired with itself
        }
        for (uint64_t n = lo; n <= hi; ++n) {
            if (res < 2 && indep_is_square(sig[n - lo])) ++running[res];
            res = res + 1 == 7 ? 0 : res + 1;
            while (next_cp < checkpoints.size() && n == checkpoints[next_cp]) {
                result[n] = running;
                ++next_cp;
            }
        }
    }
    return result;
}

// Full recomputation of a certificate's claims with raw mpz calls; used to
// discard mutations that accidentally produce another internally consistent
// certificate, which no sound verifier could reject.
bool indep_consistent(const Certificate& c) {
    if (c.a == 0 || c.k < 2 || c.t == 0) return false;
    mpz_class prod = 1, sprod = 1, prev = 1;
    for (const mpz_class& p : c.primes) {
        if (p < 2 || p <= prev) return false;
        if (mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) return false;
        prod *= p;
        sprod *= p + 1;
        prev = p;
    }
    if (prod != c.n || sprod != c.sigma_n) return false;
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), c.root_m.get_mpz_t(), c.k);
    if (power != c.sigma_n) return false;
    if (c.n % c.a != mpz_class(static_cast<unsigned long>(c.b % c.a))) return false;
    if (c.cardinality != c.primes.size()) return false;
    if (c.cardinality % c.t != 1 % c.t) return false;
    if (c.interval) {
        if (c.interval->x == 0) return false;
        mpz_class x(static_cast<unsigned long>(c.interval->x));
        for (const mpz_class& p : c.primes) {
            if (2 * p < x || p > x) return false;
        }
    }
    return true;
}

// Product of the selected elements is an exact kth power and the subset size
// is 1 mod t, recomputed from the raw numbers.
bool indep_witness_ok(const std::vector<uint64_t>& A, const SubsetWitness& w, uint32_t k,
                      uint32_t t) {
    if (w.indices.empty()) return false;
    mpz_class prod = 1;
    size_t prev = SIZE_MAX;
    for (size_t i : w.indices) {
        if (i >= A.size() || (prev != SIZE_MAX && i <= prev)) return false;
        prev = i;
        prod *= mpz_class(static_cast<unsigned long>(A[i]));
    }
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), prod.get_mpz_t(), k) == 0) return false;
    return w.indices.size() % t == 1 % t;
}

// ---- table parsing ----------------------------------------------------------

struct TableRun {
    bool parsed = false;
    double seconds = 0.0;
    int exit_code = -1;
    std::map<uint64_t, std::array<uint64_t, 2>> counts;
    std::map<uint64_t, std::string> ratios;
    std::string report;  // the '#' lines
};

TableRun parse_table(const CliRun& run) {
    TableRun table;
    table.seconds = run.seconds;
    table.exit_code = run.exit_code;
    if (run.exit_code != 0) return table;
    std::istringstream in(run.output);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            table.report += line + "\n";
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue;
        std::istringstream row(line);
        std::string x_s, b0_s, b1_s, ratio_s;
        if (!std::getline(row, x_s, ',') || !std::getline(row, b0_s, ',') ||
            !std::getline(row, b1_s, ',') || !std::getline(row, ratio_s))
            return table;
        uint64_t x = std::stoull(x_s);
        table.counts[x] = {std::stoull(b0_s), std::stoull(b1_s)};
        table.ratios[x] = ratio_s;
    }
    table.parsed = !table.counts.empty();
    return table;
}

// ---- reporting ---------------------------------------------------------------

int g_failures = 0;

void report(int id, const std::string& summary, bool pass,
            const std::vector<std::string>& notes) {
    std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", id, summary.c_str());
    for (const std::string& note : notes) std::printf("        - %s\n", note.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

// ---- criteria ----------------------------------------------------------------

void criterion_1_and_2() {
    std::vector<std::string> notes1, notes2;
    bool pass1 = true;

    // Independent oracle counts at every reference checkpoint.
    std::vector<uint64_t> checkpoints;
    for (const ReferenceRow& r : kReference) checkpoints.push_back(r.x);
    auto oracle = oracle_table_counts(checkpoints);

    // Brute-force spot oracle for x <= 10^4, by per-n trial division.
    {
        std::array<uint64_t, 2> running{0, 0};
        std::map<uint64_t, std::array<uint64_t, 2>> naive;
        for (uint64_t n = 1; n <= 10000; ++n) {
            if (n % 7 < 2 && indep_is_square(indep_sigma(n))) ++running[n % 7];
            if (n == 100 || n == 1000 || n == 10000) naive[n] = running;
        }
        for (const auto& [x, counts] : naive) {
            if (counts != oracle[x]) {
                pass1 = false;
                notes1.push_back("internal oracle disagreement at x = " + std::to_string(x) +
                                 ": the two independent sigma routes differ");
            }
        }
    }

    TableRun desk = parse_table(run_cli("table1 --max-x 1000000"));
    TableRun full = parse_table(run_cli("table1 --max-x " + std::to_string(kTableMaxX)));

    if (!desk.parsed || desk.counts.size() != 5) {
        pass1 = false;
        notes1.push_back("desk run failed (exit " + std::to_string(desk.exit_code) + ")");
    } else if (desk.seconds >= kDeskSeconds) {
        pass1 = false;
        notes1.push_back("desk run took " + fmt_seconds(desk.seconds) + ", limit " +
                         fmt_seconds(kDeskSeconds));
    } else {
        notes1.push_back("desk run to 10^6: " + fmt_seconds(desk.seconds) + " (limit " +
                         fmt_seconds(kDeskSeconds) + ")");
    }
    if (!full.parsed || full.counts.size() != 7) {
        pass1 = false;
        notes1.push_back("long run failed (exit " + std::to_string(full.exit_code) + ")");
    } else if (full.seconds >= kLongSeconds) {
        pass1 = false;
        notes1.push_back("long run took " + fmt_seconds(full.seconds) + ", limit " +
                         fmt_seconds(kLongSeconds));
    } else {
        notes1.push_back("long run to 10^8: " + fmt_seconds(full.seconds) + " (limit " +
                         fmt_seconds(kLongSeconds) + ")");
    }

    if (pass1 && desk.parsed && full.parsed) {
        // The desk and long runs must agree with each other where they overlap.
        for (const auto& [x, counts] : desk.counts) {
            if (full.counts.at(x) != counts) {
                pass1 = false;
                notes1.push_back("desk and long runs disagree at x = " + std::to_string(x));
            }
        }
        // Grade every cell against the oracle; where the reference table
        // disagrees with the oracle, oracle agreement is the pass condition
        // and the cell must be flagged in the reproduction report.
        for (const ReferenceRow& ref : kReference) {
            const auto& got = full.counts.at(ref.x);
            const auto& want = oracle.at(ref.x);
            for (int res = 0; res < 2; ++res) {
                uint64_t computed = got[res];
                uint64_t expected = want[res];
                uint64_t reference = res == 0 ? ref.b0 : ref.b1;
                std::string cell =
                    "x=" + std::to_string(ref.x) + " b=" + std::to_string(res);
                if (computed != expected) {
                    pass1 = false;
                    notes1.push_back(cell + ": computed " + std::to_string(computed) +
                                     " but the oracle says " + std::to_string(expected));
                } else if (expected != reference) {
                    bool flagged = full.report.find(cell) != std::string::npos;
                    if (!flagged) pass1 = false;
                    notes1.push_back(cell + ": oracle " + std::to_string(expected) +
                                     ", reference prints " + std::to_string(reference) +
                                     "; oracle agreement holds" +
                                     (flagged ? " and the report flags the cell"
                                              : " but the report does NOT flag the cell"));
                }
            }
        }
        // Count how much of the reference table survives contact.
        size_t exact = 0;
        for (const ReferenceRow& ref : kReference) {
            if (oracle.at(ref.x) == std::array<uint64_t, 2>{ref.b0, ref.b1}) ++exact;
        }
        notes1.push_back(std::to_string(exact) + "/7 reference rows fully match the oracle; "
                         "every b=0 reference entry sits one above the recomputed count");
    }
    report(1, "reference table reproduction, every cell graded by independent oracle", pass1,
           notes1);

    // Criterion 2: the two pinned ratio cells, conditional on counts matching.
    bool pass2 = true;
    if (!full.parsed) {
        pass2 = false;
        notes2.push_back("no table output to grade");
    } else {
        struct Cell {
            uint64_t x;
            const char* pinned;
        } cells[] = {{10000, kRatioAt1e4}, {kTableMaxX, kRatioAt1e8}};
        for (const Cell& cell : cells) {
            const ReferenceRow* ref = nullptr;
            for (const ReferenceRow& r : kReference) {
                if (r.x == cell.x) ref = &r;
            }
            const auto& got = full.counts.at(cell.x);
            bool counts_match = got == std::array<uint64_t, 2>{ref->b0, ref->b1};
            const std::string& ratio = full.ratios.at(cell.x);
            std::string head = "x=" + std::to_string(cell.x) + ": computed ratio " + ratio +
                               ", pinned " + cell.pinned;
            if (counts_match) {
                if (ratio != cell.pinned) {
                    pass2 = false;
                    notes2.push_back(head + " (counts match, ratio must match: FAIL)");
                } else {
                    notes2.push_back(head + " (counts match)");
                }
            } else if (ratio == cell.pinned) {
                notes2.push_back(head + " (counts differ from the reference yet the ratio "
                                        "still agrees to 4 decimals)");
            } else {
                notes2.push_back(head + " (condition void: counts differ from the reference, " +
                                 std::to_string(got[0]) + "/" + std::to_string(got[1]) + " vs " +
                                 std::to_string(ref->b0) + "/" + std::to_string(ref->b1) + ")");
            }
        }
    }
    report(2, "ratio column at 10^4 and 10^8, conditional on matching counts", pass2, notes2);
}

void criterion_3() {
    std::vector<std::string> notes;
    bool pass = true;
    auto start = std::chrono::steady_clock::now();

    std::vector<uint64_t> sigma(10001, 0);
    for (uint64_t n = 1; n <= 10000; ++n) sigma[n] = indep_sigma(n);

    size_t cells = 0, mismatches = 0;
    for (uint64_t a = 1; a <= 10; ++a) {
        for (uint64_t b = 0; b < a; ++b) {
            for (uint32_t k : {2u, 3u}) {
                uint64_t naive = 0;
                for (uint64_t n = b == 0 ? a : b; n <= 10000; n += a) {
                    if (indep_is_kth_power(sigma[n], k)) ++naive;
                }
                ++cells;
                if (census(10000, a, b, k) != naive) {
                    ++mismatches;
                    if (mismatches == 1)
                        notes.push_back("first mismatch at a=" + std::to_string(a) +
                                        " b=" + std::to_string(b) + " k=" + std::to_string(k));
                }
            }
        }
    }
    double secs = seconds_since(start);
    if (mismatches > 0) pass = false;
    if (secs >= kCensusSeconds) pass = false;
    notes.push_back(std::to_string(cells) + " cells, " + std::to_string(mismatches) +
                    " mismatches, " + fmt_seconds(secs) + " (limit " +
                    fmt_seconds(kCensusSeconds) + ")");
    report(3, "census equals brute force for a <= 10, all b, k in {2,3}, x = 10^4", pass, notes);
}

void criterion_4() {
    std::vector<std::string> notes;
    bool pass = true;

    std::vector<uint64_t> expected{1, 3, 22, 66, 70, 81, 94};
    auto hits = list_hits(100, 1, 0, 2);
    if (hits != expected) {
        pass = false;
        notes.push_back("list_hits(100,1,0,2) differs from {1,3,22,66,70,81,94}");
    } else {
        notes.push_back("list_hits(100,1,0,2) = {1,3,22,66,70,81,94}");
    }

    uint64_t total = 0;
    for (uint64_t b = 0; b < 7; ++b) total += census(10000, 7, b, 2);
    uint64_t whole = census(10000, 1, 0, 2);
    if (total != whole) {
        pass = false;
        notes.push_back("partition identity broken: residue classes sum to " +
                        std::to_string(total) + ", direct count is " + std::to_string(whole));
    } else {
        notes.push_back("sum over b of N(10^4;7,b,2) = " + std::to_string(total) +
                        " = N(10^4;1,0,2)");
    }
    report(4, "hit-list regression and residue partition identity at 10^4", pass, notes);
}

void criterion_5() {
    std::vector<std::string> notes;
    bool pass = true;

    const uint64_t spot_36 = s_bound(1, 2, 1);
    const uint64_t spot_174 = s_bound(3, 2, 1);
    const uint64_t spot_1291 = s_bound(1, 2, 3);
    if (spot_36 != 36 || spot_174 != 174 || spot_1291 != 1291) {
        pass = false;
        notes.push_back("s_bound spot values off: got " + std::to_string(spot_36) + ", " +
                        std::to_string(spot_174) + ", " + std::to_string(spot_1291) +
                        ", want 36, 174, 1291");
    } else {
        notes.push_back("s_bound(1,2,1) = 36, s_bound(3,2,1) = 174, s_bound(1,2,3) = 1291");
    }

    std::mt19937_64 rng(0xACCE5505);
    const std::vector<uint64_t> S{2, 3, 5, 7};
    size_t disagreements = 0, unsound = 0, trials = 500;
    for (size_t trial = 0; trial < trials; ++trial) {
        size_t n = 1 + rng() % 12;
        uint32_t k = 2 + static_cast<uint32_t>(rng() % 3);
        uint32_t t = 1 + static_cast<uint32_t>(rng() % 3);
        while (std::gcd(k, t) != 1) t = 1 + static_cast<uint32_t>(rng() % 3);
        std::vector<uint64_t> A;
        std::vector<std::array<uint32_t, 4>> exps;
        for (size_t i = 0; i < n; ++i) {
            uint64_t v = 1;
            for (uint64_t q : S) {
                uint32_t e = rng() % 4;
                for (uint32_t j = 0; j < e; ++j) v *= q;
            }
            if (v == 1) v = S[rng() % S.size()];
            A.push_back(v);
            // independent exponent extraction for the bitmask oracle
            std::array<uint32_t, 4> ex{0, 0, 0, 0};
            uint64_t w = v;
            for (size_t j = 0; j < S.size(); ++j) {
                while (w % S[j] == 0) {
                    w /= S[j];
                    ++ex[j];
                }
            }
            exps.push_back(ex);
        }
        bool oracle_found = false;
        for (uint64_t mask = 1; mask < (uint64_t{1} << n) && !oracle_found; ++mask) {
            std::array<uint64_t, 4> sum{0, 0, 0, 0};
            uint32_t size = 0;
            for (size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    ++size;
                    for (size_t j = 0; j < 4; ++j) sum[j] += exps[i][j];
                }
            }
            bool ok = size % t == 1 % t;
            for (size_t j = 0; ok && j < 4; ++j) ok = sum[j] % k == 0;
            oracle_found = ok;
        }

        auto vectors = encode(A, S, k, t);
        FindResult ex = find_subset(vectors, Strategy::exhaustive);
        if (ex.witness.has_value() != oracle_found ||
            (ex.witness && !indep_witness_ok(A, *ex.witness, k, t)))
            ++disagreements;
        for (Strategy s : {Strategy::group_walk, Strategy::nullspace}) {
            FindResult r = find_subset(vectors, s);
            if (r.witness && !indep_witness_ok(A, *r.witness, k, t)) ++unsound;
        }
    }
    if (disagreements > 0 || unsound > 0) pass = false;
    notes.push_back(std::to_string(trials) + " random instances: " +
                    std::to_string(disagreements) + " exhaustive/oracle disagreements, " +
                    std::to_string(unsound) + " unsound strategy outputs");

    // Guaranteed family: 36 = s_bound(1,2,1) elements over S = {2} with
    // k = 2, t = 1 always contain a square-product subset.
    size_t guaranteed_misses = 0;
    for (size_t draw = 0; draw < 20; ++draw) {
        std::vector<uint64_t> A;
        for (size_t i = 0; i < 36; ++i) A.push_back(uint64_t{1} << (1 + rng() % 24));
        auto vectors = encode(A, {2}, 2, 1);
        for (Strategy s : {Strategy::exhaustive, Strategy::group_walk, Strategy::nullspace}) {
            FindResult r = find_subset(vectors, s);
            if (!r.witness || !indep_witness_ok(A, *r.witness, 2, 1)) ++guaranteed_misses;
        }
    }
    if (guaranteed_misses > 0) {
        pass = false;
        notes.push_back(std::to_string(guaranteed_misses) +
                        " strategy runs missed a witness on the guaranteed |A| = 36 family");
    } else {
        notes.push_back("all strategies find verified witnesses on 20 draws of the "
                        "guaranteed |A| = 36 family over S = {2}");
    }
    report(5, "zero-sum solver vs independent oracle, soundness, and s_bound spots", pass, notes);
}

void criterion_6() {
    std::vector<std::string> notes;
    bool pass = true;

    CliRun run = run_cli("construct --a 7 --b 2 --k 2");
    if (run.exit_code != 0) {
        pass = false;
        notes.push_back("construct exited " + std::to_string(run.exit_code));
    } else if (run.seconds >= kConstructSeconds) {
        pass = false;
        notes.push_back("construct took " + fmt_seconds(run.seconds) + ", limit " +
                        fmt_seconds(kConstructSeconds));
    } else {
        try {
            std::string line = run.output.substr(0, run.output.find('\n'));
            Certificate cert = certificate_from_json(line);
            VerificationReport rep = verify_certificate(cert);
            if (!rep.overall) {
                pass = false;
                notes.push_back("emitted certificate fails verification");
            } else {
                notes.push_back("interval-mode certificate verifies, n = " + cert.n.get_str() +
                                ", " + fmt_seconds(run.seconds) + " (limit " +
                                fmt_seconds(kConstructSeconds) + ")");
            }
        } catch (const std::exception& e) {
            pass = false;
            notes.push_back(std::string("certificate parse failed: ") + e.what());
        }
    }

    ConstructOutcome outcome =
        construct_witness_pool(7, 2, 2, {2, 23, 37, 79, 107, 149, 163, 191, 233});
    if (const Certificate* cert = std::get_if<Certificate>(&outcome)) {
        VerificationReport rep = verify_certificate(*cert);
        if (!rep.overall) {
            pass = false;
            notes.push_back("pool certificate fails verification");
        } else {
            notes.push_back("pool fixture verifies with sigma(n) = " + cert->root_m.get_str() +
                            "^2 (n = " + cert->n.get_str() + ")");
        }
    } else {
        pass = false;
        notes.push_back("pool fixture came back infeasible");
    }
    report(6, "witness construction: interval mode via CLI and the pool fixture", pass, notes);
}

void criterion_7() {
    std::vector<std::string> notes;
    bool pass = true;
    auto start = std::chrono::steady_clock::now();
    try {
        std::vector<Certificate> stream = witness_stream(7, 1, 2, 3);
        double secs = seconds_since(start);
        if (stream.size() != 3) {
            pass = false;
            notes.push_back("stream has " + std::to_string(stream.size()) + " certificates");
        }
        mpz_class prev = 0;
        std::map<std::string, int> support;
        size_t invalid = 0, shared = 0;
        bool increasing = true;
        for (const Certificate& cert : stream) {
            if (!verify_certificate(cert).overall) ++invalid;
            if (cert.n <= prev) increasing = false;
            prev = cert.n;
            for (const mpz_class& p : cert.primes) shared += support[p.get_str()]++ > 0;
        }
        if (invalid || shared || !increasing) pass = false;
        if (secs >= kStreamSeconds) pass = false;
        notes.push_back(std::to_string(stream.size()) + " certificates, " +
                        std::to_string(invalid) + " invalid, " + std::to_string(shared) +
                        " shared primes, strictly increasing: " +
                        (increasing ? "yes" : "no") + ", " + fmt_seconds(secs) + " (limit " +
                        fmt_seconds(kStreamSeconds) + ")");
    } catch (const std::exception& e) {
        pass = false;
        notes.push_back(std::string("witness_stream threw: ") + e.what());
    }
    report(7, "witness_stream(7,1,2,3): disjoint, increasing, verifying", pass, notes);
}

void criterion_8() {
    std::vector<std::string> notes;
    bool pass = true;

    ConstructOutcome outcome = construct_witness(7, 2, 2, 4000);
    Certificate base = std::get<Certificate>(outcome);
    if (!verify_certificate(base).overall || !indep_consistent(base)) {
        report(8, "verifier rejects corrupted certificates", false,
               {"base certificate is not valid to begin with"});
        return;
    }

    std::mt19937_64 rng(0xACCE5508);
    auto mutate_mpz = [&rng](mpz_class& v) {
        switch (rng() % 4) {
            case 0: v += 1 + rng() % 1000; break;
            case 1: v -= 1 + rng() % 1000; break;
            case 2: v *= 2; break;
            default: v /= 2; break;
        }
    };

    size_t kept = 0, accepted = 0, redraws = 0;
    std::string first_accepted;
    while (kept < 1000) {
        Certificate m = base;
        switch (rng() % 10) {
            case 0: m.a = rng() % 64; break;
            case 1: m.b = rng() % 16; break;
            case 2: m.k = static_cast<uint32_t>(rng() % 6); break;
            case 3: m.t = rng() % 8; break;
            case 4: mutate_mpz(m.n); break;
            case 5: mutate_mpz(m.sigma_n); break;
            case 6: mutate_mpz(m.root_m); break;
            case 7: m.cardinality = rng() % 10; break;
            case 8: {
                size_t i = rng() % m.primes.size();
                switch (rng() % 4) {
                    case 0: mutate_mpz(m.primes[i]); break;
                    case 1: m.primes.erase(m.primes.begin() + i); break;
                    case 2: {
                        mpz_class dup = m.primes[i];
                        m.primes.insert(m.primes.begin() + i, dup);
                        break;
                    }
                    default:
                        if (m.primes.size() > 1) {
                            std::swap(m.primes[i], m.primes[(i + 1) % m.primes.size()]);
                        } else {
                            m.primes[0] += 1;
                        }
                        break;
                }
                break;
            }
            default:
                if (m.interval && rng() % 2) {
                    m.interval->x = rng() % 8000;
                } else {
                    m.interval = IntervalInfo{1 + rng() % 100};
                }
                break;
        }
        if (indep_consistent(m)) {
            // the mutation landed on another valid certificate; nothing to reject
            ++redraws;
            continue;
        }
        ++kept;
        if (verify_certificate(m).overall) {
            ++accepted;
            if (first_accepted.empty()) first_accepted = certificate_to_json(m);
        }
    }
    if (accepted > 0) {
        pass = false;
        notes.push_back("verifier accepted " + std::to_string(accepted) +
                        " corrupted certificates; first: " + first_accepted);
    }
    notes.push_back("1000 corrupting mutations all rejected; " + std::to_string(redraws) +
                    " draws discarded for landing on a still-consistent certificate");
    report(8, "verifier rejects 1000 random single-field corruptions", pass, notes);
}

void criterion_9() {
    std::vector<std::string> notes;
    bool pass = true;

    SmoothDensityReport rep = density_report({10000, 100000, 1000000}, Rational{3, 5}, 7, 2);
    for (const DensityRow& row : rep.rows) {
        if (!(row.normalized > 0.0)) {
            pass = false;
            notes.push_back("normalized density vanishes at x = " + std::to_string(row.x));
        }
    }
    if (pass) {
        std::string got;
        char buf[64];
        for (const DensityRow& row : rep.rows) {
            std::snprintf(buf, sizeof(buf), "%s%.4f", got.empty() ? "" : ", ", row.normalized);
            got += buf;
        }
        notes.push_back("normalized densities at 10^4, 10^5, 10^6: " + got + ", all positive");
    }

    uint64_t prev = 0;
    bool monotone = true;
    for (uint64_t y : {50ull, 100ull, 316ull, 1000ull, 3162ull, 10000ull, 100000ull}) {
        uint64_t count = pi_smooth(100000, y, 7, 2);
        if (count < prev) monotone = false;
        prev = count;
    }
    if (!monotone) {
        pass = false;
        notes.push_back("pi_smooth is not monotone in y at x = 10^5");
    } else {
        notes.push_back("pi_smooth(10^5, y, 7, 2) is monotone over the sampled y grid");
    }
    report(9, "smooth shifted-prime density positivity and monotonicity", pass, notes);
}

}  // namespace

int main() {
    auto start = std::chrono::steady_clock::now();
    auto guarded = [](void (*fn)(), const char* label) {
        try {
            fn();
        } catch (const std::exception& e) {
            std::printf("FAIL  %s: unhandled exception: %s\n", label, e.what());
            ++g_failures;
        }
    };
    guarded(criterion_1_and_2, "criteria 1 and 2");
    guarded(criterion_3, "criterion 3");
    guarded(criterion_4, "criterion 4");
    guarded(criterion_5, "criterion 5");
    guarded(criterion_6, "criterion 6");
    guarded(criterion_7, "criterion 7");
    guarded(criterion_8, "criterion 8");
    guarded(criterion_9, "criterion 9");
    std::printf("acceptance: %d/9 criteria passed in %s\n", 9 - g_failures,
                fmt_seconds(seconds_since(start)).c_str());
    return g_failures == 0 ? 0 : 1;
}
