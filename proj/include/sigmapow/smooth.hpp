#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmapow/arith.hpp"

// Shifted primes with smooth p + 1: enumeration of primes in arithmetic
// progressions over [x/2, x], the count pi_{a,b}(x, y) of those whose p + 1
// has no prime factor above y, and the candidate sets feeding the witness
// pipeline.

namespace sigmapow {

// Exact exponent num/den for the smoothness threshold y = floor(x^(num/den)).
struct Rational {
    uint32_t num = 3;
    uint32_t den = 5;
};

// floor(x^(num/den)), computed exactly in integer arithmetic.
uint64_t rational_power_floor(uint64_t x, Rational alpha);

struct ShiftedPrime {
    uint64_t p;
    uint64_t shifted;  // p + 1
    Factorization factorization;
};

struct CandidateSet {
    uint64_t x = 0;
    Rational alpha;
    uint64_t a = 1;
    uint64_t b = 0;
    uint64_t y = 0;                  // smoothness threshold floor(x^alpha)
    std::vector<uint64_t> alphabet;  // S: the prime alphabet in use
    size_t full_alphabet_size = 0;   // |{p prime : p <= y}| before trimming
    std::vector<ShiftedPrime> shifted_primes;  // A, ascending by p
};

struct DensityRow {
    uint64_t x, y, a, b;
    uint64_t count;
    double normalized;  // count * phi(a) * ln(x) / x
};

struct SmoothDensityReport {
    std::vector<DensityRow> rows;

    // header x,y,a,b,count,normalized
    std::string to_csv() const;
};

// All primes p in [lo, hi] with p = b (mod a), ascending. No coprimality
// requirement: a progression sharing a factor simply yields at most the one
// prime p = b.
std::vector<uint64_t> primes_in_ap(uint64_t lo, uint64_t hi, uint64_t a, uint64_t b);

// |{ceil(x/2) <= p <= x : p prime, p = b (mod a), P(p+1) <= y}| by dividing
// out primes <= y. Throws std::domain_error unless gcd(a, b) = 1.
uint64_t pi_smooth(uint64_t x, uint64_t y, uint64_t a, uint64_t b);
std::vector<uint64_t> pi_smooth_primes(uint64_t x, uint64_t y, uint64_t a, uint64_t b);

// The sets A and S over [ceil(x/2), x]: A holds every progression prime
// whose shifted value is x^alpha-smooth, with its full factorization; S is
// trimmed to primes occurring in A unless trim_alphabet is false. Returns
// nullopt when A is empty (caller retries with larger x).
std::optional<CandidateSet> build_candidate_set(uint64_t x, uint64_t a, uint64_t b,
                                                Rational alpha = {}, bool trim_alphabet = true);

// One row per grid point; no asymptotic claim, just the measured counts.
SmoothDensityReport density_report(const std::vector<uint64_t>& x_grid, Rational alpha,
                                   uint64_t a, uint64_t b);

}  // namespace sigmapow
