#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sigmapow/certificate.hpp"
#include "sigmapow/smooth.hpp"
#include "sigmapow/zerosum.hpp"

// Construction of witnesses n = b (mod a) with sigma(n) a perfect kth power:
// pick a candidate interval, keep the progression primes with smooth p + 1,
// and search the exponent vectors for a subset whose shifted product is a
// kth power with the right cardinality. Amplification multiplies a verified
// witness by a coprime witness for the class of 1, which preserves the
// residue and the power shape and can be iterated forever.

namespace sigmapow {

struct ApplicabilityReport {
    uint64_t a = 1;
    uint64_t b = 0;  // normalized into [0, a)
    uint32_t k = 2;
    uint64_t gcd_ab = 1;
    std::optional<uint64_t> t;  // multiplicative order of b mod a, when defined
    std::optional<uint64_t> gcd_tk;
    bool applies = false;
    std::string reason;  // which hypothesis failed, when applies is false
};

ApplicabilityReport applicability(uint64_t a, uint64_t b, uint32_t k);

struct PipelineOptions {
    Rational alpha{};                  // smoothness exponent, default 3/5
    std::optional<Strategy> strategy;  // default: nullspace for k = 2, group_walk otherwise
    SolverOptions solver{};
    uint64_t initial_x = 0;  // doubling schedule start; 0 means max(64a, 1000)
    unsigned max_doublings = 24;
    bool trim_alphabet = true;
};

// Constructive failure: nothing wrong with the request, this interval or
// pool just does not contain an admissible subset. retry_x is the suggested
// next interval bound (0 in pool mode, where retrying cannot help).
struct Infeasible {
    std::string reason;
    uint64_t retry_x = 0;
};

using ConstructOutcome = std::variant<Certificate, Infeasible>;

// Interval mode: candidates are the progression primes in [x/2, x] with
// x^alpha-smooth shift. Throws std::domain_error when the (a, b, k)
// hypotheses fail (applicability says which).
ConstructOutcome construct_witness(uint64_t a, uint64_t b, uint32_t k, uint64_t x,
                                   const PipelineOptions& options = {});

// Pool mode: the caller supplies the candidate primes directly. Every pool
// element must be prime and lie in the progression.
ConstructOutcome construct_witness_pool(uint64_t a, uint64_t b, uint32_t k,
                                        const std::vector<uint64_t>& pool,
                                        const PipelineOptions& options = {});

// Interval mode with the doubling schedule: start at initial_x and double
// until a witness appears. Throws std::runtime_error when max_doublings
// rounds all come back infeasible.
Certificate construct_witness_scheduled(uint64_t a, uint64_t b, uint32_t k,
                                        const PipelineOptions& options = {});

// Wrap a known squarefree witness value as a certificate (used to seed
// amplification). Throws std::domain_error if w is not squarefree, lies in
// the wrong class, or sigma(w) is not a perfect kth power.
Certificate certificate_from_value(uint64_t w, uint64_t a, uint64_t b, uint32_t k);

// Multiply a verified base witness by a fresh coprime witness r = 1 (mod a)
// drawn from an interval beyond the base's primes. The result certifies
// n = base.n * r for the same (a, b, k); its new primes are disjoint from
// the base's and n strictly grows. min_x raises the interval floor.
Certificate amplify(const Certificate& base, uint64_t min_x = 0,
                    const PipelineOptions& options = {});

// count successive amplifications starting from seed (or from a scheduled
// construction when seed is empty). For b = 1 (mod a) each output is a
// fresh standalone witness, so the emitted certificates have pairwise
// disjoint prime sets; otherwise each output extends the previous one.
std::vector<Certificate> witness_stream(uint64_t a, uint64_t b, uint32_t k, size_t count,
                                        const std::optional<Certificate>& seed = std::nullopt,
                                        const PipelineOptions& options = {});

}  // namespace sigmapow
