#include "sigmapow/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sigmapow {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

bool sprp(uint64_t n, uint64_t base, uint64_t d, int r) {
    base %= n;
    if (base == 0) return true;
    uint64_t x = powmod(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set decides primality for every n < 2^64.
    for (uint64_t base : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (!sprp(n, base, d, r)) return false;
    }
    return true;
}

PrimeTable sieve_primes(uint64_t limit) {
    PrimeTable table;
    table.limit = limit;
    if (limit < 2) return table;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (!composite[i]) {
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }
    for (uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) table.primes.push_back(i);
    }
    return table;
}

namespace {

// Divide out p completely; append the prime power if p divides n.
void extract_factor(uint64_t& n, uint64_t p, std::vector<PrimePower>& out) {
    if (n % p != 0) return;
    uint32_t e = 0;
    do {
        n /= p;
        ++e;
    } while (n % p == 0);
    out.push_back({p, e});
}

Factorization factorize_impl(uint64_t n, const std::vector<uint64_t>* primes) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    Factorization f;
    f.value = n;
    if (n == 1) return f;

    if (primes != nullptr) {
        for (uint64_t p : *primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                extract_factor(n, p, f.factors);
                if (n > 1 && is_prime(n)) break;
            }
        }
    }
    if (n > 1 && !is_prime(n)) {
        uint64_t start = f.factors.empty() ? 2 : f.factors.back().prime + 1;
        if (primes != nullptr && !primes->empty()) {
            // Resume past the table's coverage.
            start = std::max<uint64_t>(start, primes->back() + 1);
        }
        for (uint64_t p = start; p * p <= n; ++p) {
            if (n % p == 0) {
                extract_factor(n, p, f.factors);
                if (n > 1 && is_prime(n)) break;
            }
        }
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

}  // namespace

Factorization factorize(uint64_t n) { return factorize_impl(n, nullptr); }

Factorization factorize(uint64_t n, const PrimeTable& table) {
    return factorize_impl(n, &table.primes);
}

uint64_t sigma(const Factorization& f) {
    __uint128_t result = 1;
    for (const auto& pp : f.factors) {
        __uint128_t term = 1;
        __uint128_t power = 1;
        for (uint32_t i = 0; i < pp.exponent; ++i) {
            power *= pp.prime;
            term += power;
        }
        if (term > UINT64_MAX) throw std::overflow_error("sigma: result exceeds 64 bits");
        result *= term;
        if (result > UINT64_MAX) throw std::overflow_error("sigma: result exceeds 64 bits");
    }
    return static_cast<uint64_t>(result);
}

namespace {

// v^k, or nullopt on 64-bit overflow.
std::optional<uint64_t> checked_pow(uint64_t v, unsigned k) {
    __uint128_t acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= v;
        if (acc > UINT64_MAX) return std::nullopt;
    }
    return static_cast<uint64_t>(acc);
}

}  // namespace

uint64_t floor_nth_root(uint64_t x, unsigned n) {
    if (n == 0) throw std::domain_error("floor_nth_root: n must be >= 1");
    if (x == 0 || n == 1) return x;
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(x), 1.0 / n));
    // Float seed can be off by one either way; settle it exactly.
    while (r > 0) {
        auto p = checked_pow(r, n);
        if (p && *p <= x) break;
        --r;
    }
    while (true) {
        auto p = checked_pow(r + 1, n);
        if (!p || *p > x) break;
        ++r;
    }
    return r;
}

std::optional<uint64_t> is_perfect_kth_power(uint64_t v, unsigned k) {
    if (k < 2) throw std::domain_error("is_perfect_kth_power: k must be >= 2");
    if (v == 0) throw std::domain_error("is_perfect_kth_power: v must be positive");
    if (v == 1) return 1;
    uint64_t r = floor_nth_root(v, k);
    auto p = checked_pow(r, k);
    if (p && *p == v) return r;
    return std::nullopt;
}

uint64_t largest_prime_factor(uint64_t n) {
    if (n < 2) throw std::domain_error("largest_prime_factor: n must be >= 2");
    return factorize(n).factors.back().prime;
}

uint64_t largest_prime_factor(uint64_t n, const PrimeTable& table) {
    if (n < 2) throw std::domain_error("largest_prime_factor: n must be >= 2");
    return factorize(n, table).factors.back().prime;
}

uint64_t multiplicative_order(uint64_t b, uint64_t a) {
    if (a == 0) throw std::domain_error("multiplicative_order: modulus must be positive");
    if (a == 1) return 1;
    b %= a;
    if (std::gcd(a, b) != 1) {
        throw std::domain_error("multiplicative_order: gcd(a, b) must be 1, got gcd(" +
                                std::to_string(a) + ", " + std::to_string(b) + ") != 1");
    }
    // Start from the group exponent phi(a) and strip primes while the power
    // stays at 1.
    uint64_t t = euler_phi(a);
    for (const auto& pp : factorize(t).factors) {
        for (uint32_t i = 0; i < pp.exponent; ++i) {
            if (powmod(b, t / pp.prime, a) == 1) {
                t /= pp.prime;
            } else {
                break;
            }
        }
    }
    return t;
}

uint32_t omega_with_multiplicity(uint64_t h) {
    uint32_t total = 0;
    for (const auto& pp : factorize(h).factors) total += pp.exponent;
    return total;
}

uint64_t euler_phi(uint64_t a) {
    if (a == 0) throw std::domain_error("euler_phi: a must be positive");
    uint64_t result = a;
    for (const auto& pp : factorize(a).factors) {
        result -= result / pp.prime;
    }
    return result;
}

SigmaSegment sieve_sigma_segment(uint64_t lo, uint64_t hi, const PrimeTable& table) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("sieve_sigma_segment: need 1 <= lo <= hi");
    uint64_t root = floor_nth_root(hi, 2);
    if (table.limit < root) {
        throw std::invalid_argument("sieve_sigma_segment: prime table limit " +
                                    std::to_string(table.limit) + " < floor(sqrt(hi)) = " +
                                    std::to_string(root));
    }

    size_t len = static_cast<size_t>(hi - lo + 1);
    SigmaSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.values.assign(len, 1);
    std::vector<uint64_t> remaining(len);
    for (size_t i = 0; i < len; ++i) remaining[i] = lo + i;

    for (uint64_t p : table.primes) {
        if (p > root) break;
        uint64_t first = ((lo + p - 1) / p) * p;
        for (uint64_t m = first; m <= hi; m += p) {
            size_t i = static_cast<size_t>(m - lo);
            uint64_t r = remaining[i];
            uint64_t geom = 1;
            uint64_t power = 1;
            do {
                r /= p;
                power *= p;
                geom += power;
            } while (r % p == 0);
            remaining[i] = r;
            seg.values[i] *= geom;
        }
    }
    for (size_t i = 0; i < len; ++i) {
        // Whatever survives the base primes is a single prime > sqrt(hi).
        if (remaining[i] > 1) seg.values[i] *= remaining[i] + 1;
    }
    return seg;
}

}  // namespace sigmapow
