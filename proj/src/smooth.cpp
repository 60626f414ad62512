#include "sigmapow/smooth.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace sigmapow {

uint64_t rational_power_floor(uint64_t x, Rational alpha) {
    if (x == 0 || alpha.den == 0) throw std::invalid_argument("rational_power_floor: x and den must be positive");
    mpz_t v;
    mpz_init_set_ui(v, x);
    mpz_pow_ui(v, v, alpha.num);
    mpz_root(v, v, alpha.den);
    if (!mpz_fits_ulong_p(v)) {
        mpz_clear(v);
        throw std::overflow_error("rational_power_floor: result exceeds 64 bits");
    }
    uint64_t r = mpz_get_ui(v);
    mpz_clear(v);
    return r;
}

std::vector<uint64_t> primes_in_ap(uint64_t lo, uint64_t hi, uint64_t a, uint64_t b) {
    if (a == 0) throw std::domain_error("primes_in_ap: modulus must be positive");
    std::vector<uint64_t> out;
    if (lo > hi) return out;
    if (lo < 2) lo = 2;
    if (lo > hi) return out;

    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    PrimeTable table = sieve_primes(std::max<uint64_t>(root, 2));

    uint64_t want = b % a;
    std::vector<uint8_t> composite(hi - lo + 1, 0);
    for (uint64_t p : table.primes) {
        if (p * p > hi) break;
        uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
    }
    for (uint64_t n = lo; n <= hi; ++n) {
        if (!composite[n - lo] && n % a == want) out.push_back(n);
    }
    return out;
}

namespace {

// Divide primes <= y out of p + 1; the remainder has no factor <= y except
// possibly itself (when the loop stopped at q^2 > remainder).
bool shifted_is_smooth(uint64_t p, uint64_t y, const PrimeTable& table) {
    uint64_t v = p + 1;
    for (uint64_t q : table.primes) {
        if (q > y || q * q > v) break;
        while (v % q == 0) v /= q;
    }
    return v == 1 || v <= y;
}

std::vector<uint64_t> smooth_shifted(uint64_t x, uint64_t y, uint64_t a, uint64_t b) {
    if (x < 4) throw std::domain_error("pi_smooth: x must be at least 4");
    if (y < 2) throw std::domain_error("pi_smooth: y must be at least 2");
    if (std::gcd(a, b) != 1) throw std::domain_error("pi_smooth: a and b must be coprime");

    uint64_t lo = (x + 1) / 2;
    std::vector<uint64_t> primes = primes_in_ap(lo, x, a, b);

    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(x + 1))) + 1;
    PrimeTable table = sieve_primes(std::max<uint64_t>(std::min(y, root), 2));

    std::vector<uint64_t> out;
    for (uint64_t p : primes) {
        if (shifted_is_smooth(p, y, table)) out.push_back(p);
    }
    return out;
}

}  // namespace

uint64_t pi_smooth(uint64_t x, uint64_t y, uint64_t a, uint64_t b) {
    return smooth_shifted(x, y, a, b).size();
}

std::vector<uint64_t> pi_smooth_primes(uint64_t x, uint64_t y, uint64_t a, uint64_t b) {
    return smooth_shifted(x, y, a, b);
}

std::optional<CandidateSet> build_candidate_set(uint64_t x, uint64_t a, uint64_t b,
                                                Rational alpha, bool trim_alphabet) {
    if (x < 4) throw std::domain_error("build_candidate_set: x must be at least 4");
    if (std::gcd(a, b) != 1) throw std::domain_error("build_candidate_set: a and b must be coprime");
    if (alpha.num == 0 || alpha.den == 0) throw std::domain_error("build_candidate_set: alpha must be positive");

    CandidateSet cs;
    cs.x = x;
    cs.alpha = alpha;
    cs.a = a;
    cs.b = b % a;
    cs.y = rational_power_floor(x, alpha);
    if (cs.y < 2) cs.y = 2;

    uint64_t lo = (x + 1) / 2;
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(x + 1))) + 1;
    PrimeTable factor_table = sieve_primes(std::max<uint64_t>(root, 2));

    for (uint64_t p : primes_in_ap(lo, x, a, b)) {
        Factorization f = factorize(p + 1, factor_table);
        if (f.factors.back().prime <= cs.y) {
            cs.shifted_primes.push_back({p, p + 1, std::move(f)});
        }
    }
    if (cs.shifted_primes.empty()) return std::nullopt;

    PrimeTable alphabet_table = sieve_primes(std::max<uint64_t>(cs.y, 2));
    cs.full_alphabet_size = alphabet_table.primes.size();
    if (trim_alphabet) {
        std::vector<uint64_t> used;
        for (const ShiftedPrime& sp : cs.shifted_primes) {
            for (const PrimePower& pp : sp.factorization.factors) used.push_back(pp.prime);
        }
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        cs.alphabet = std::move(used);
    } else {
        cs.alphabet = alphabet_table.primes;
    }
    return cs;
}

SmoothDensityReport density_report(const std::vector<uint64_t>& x_grid, Rational alpha,
                                   uint64_t a, uint64_t b) {
    SmoothDensityReport report;
    uint64_t phi = euler_phi(a);
    for (uint64_t x : x_grid) {
        uint64_t y = rational_power_floor(x, alpha);
        uint64_t count = pi_smooth(x, std::max<uint64_t>(y, 2), a, b);
        double normalized = static_cast<double>(count) * static_cast<double>(phi) *
                            std::log(static_cast<double>(x)) / static_cast<double>(x);
        report.rows.push_back({x, y, a, b, count, normalized});
    }
    return report;
}

std::string SmoothDensityReport::to_csv() const {
    std::string out = "x,y,a,b,count,normalized\n";
    char line[160];
    for (const DensityRow& r : rows) {
        std::snprintf(line, sizeof(line), "%llu,%llu,%llu,%llu,%llu,%.6f\n",
                      static_cast<unsigned long long>(r.x), static_cast<unsigned long long>(r.y),
                      static_cast<unsigned long long>(r.a), static_cast<unsigned long long>(r.b),
                      static_cast<unsigned long long>(r.count), r.normalized);
        out += line;
    }
    return out;
}

}  // namespace sigmapow
