#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Exact integer arithmetic: factorization, sigma, perfect-power detection,
// multiplicative order, primality, and a segmented sigma sieve. Everything
// here is value-semantic and safe to call from multiple threads.

namespace sigmapow {

struct PrimePower {
    uint64_t prime;
    uint32_t exponent;

    bool operator==(const PrimePower&) const = default;
};

// value = product of prime^exponent, primes strictly increasing, exponents >= 1.
// value 1 has an empty factor list.
struct Factorization {
    uint64_t value = 1;
    std::vector<PrimePower> factors;

    bool operator==(const Factorization&) const = default;
};

// All primes <= limit, ascending. The limit travels with the list so
// downstream code can check completeness instead of trusting the caller.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;
};

// sigma(n) for every n in [lo, hi]; values[i] = sigma(lo + i).
struct SigmaSegment {
    uint64_t lo = 1;
    uint64_t hi = 1;
    std::vector<uint64_t> values;
};

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

// Deterministic for all 64-bit inputs (fixed sprp witness set).
bool is_prime(uint64_t n);

PrimeTable sieve_primes(uint64_t limit);

// Trial division with a primality early-exit on the remaining cofactor.
// Throws std::domain_error for n = 0. An optional prime table accelerates
// the scan; correctness does not depend on the table's range.
Factorization factorize(uint64_t n);
Factorization factorize(uint64_t n, const PrimeTable& table);

// sigma = prod (p^(e+1) - 1) / (p - 1). Exact; throws std::overflow_error
// if the result does not fit 64 bits.
uint64_t sigma(const Factorization& f);

// Largest integer r with r^5 <= x^3 etc.; exact for any 64-bit base.
uint64_t floor_nth_root(uint64_t x, unsigned n);

// Returns m iff m^k = v exactly, otherwise empty. Float seed, integer
// Newton correction, exact confirmation.
std::optional<uint64_t> is_perfect_kth_power(uint64_t v, unsigned k);

uint64_t largest_prime_factor(uint64_t n);
uint64_t largest_prime_factor(uint64_t n, const PrimeTable& table);

// Least t >= 1 with b^t = 1 (mod a). Throws std::domain_error unless
// gcd(a, b) = 1.
uint64_t multiplicative_order(uint64_t b, uint64_t a);

// Number of prime factors counted with multiplicity.
uint32_t omega_with_multiplicity(uint64_t h);

uint64_t euler_phi(uint64_t a);

// Multiplicative reconstruction over [lo, hi]: divide out each base prime's
// power per cell, then multiply in the leftover prime cofactor. Requires
// table.limit >= floor(sqrt(hi)); throws std::invalid_argument otherwise.
SigmaSegment sieve_sigma_segment(uint64_t lo, uint64_t hi, const PrimeTable& table);

}  // namespace sigmapow
