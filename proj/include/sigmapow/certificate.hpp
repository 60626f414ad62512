#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// A witness certificate: a squarefree n = p_1 * ... * p_r with n = b (mod a)
// and sigma(n) = root_m^k, carried as the prime list plus the claimed
// products so a verifier can recheck everything. Unbounded integers are
// serialized as decimal strings; one certificate is one JSON object on one
// line, with a fixed field order.

namespace sigmapow {

struct IntervalInfo {
    uint64_t x = 0;  // every prime was drawn from [x/2, x]
};

struct Certificate {
    uint64_t a = 1;
    uint64_t b = 0;
    uint32_t k = 2;
    uint64_t t = 1;
    std::vector<mpz_class> primes;  // strictly increasing
    mpz_class n = 1;
    mpz_class sigma_n = 1;
    mpz_class root_m = 1;
    uint64_t cardinality = 0;
    std::optional<IntervalInfo> interval;
};

std::string certificate_to_json(const Certificate& cert);

// Throws std::runtime_error naming the offending field.
Certificate certificate_from_json(const std::string& text);

}  // namespace sigmapow
