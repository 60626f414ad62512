#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Subset search in (Z/kZ)^s x (Z/tZ): given numbers whose prime factors all
// lie in a fixed alphabet S, find a nonempty subset whose product is a
// perfect kth power and whose cardinality is 1 mod t. Elements are encoded
// as exponent residues plus a cardinality counter; the target element is
// (0,...,0; 1 mod t).

namespace sigmapow {

struct GroupVector {
    uint32_t k = 2;
    uint32_t t = 1;
    std::vector<uint32_t> residues;  // exponents mod k, in alphabet order
    uint32_t counter = 0;            // cardinality contribution mod t

    bool operator==(const GroupVector&) const = default;
};

struct SubsetWitness {
    std::vector<size_t> indices;  // strictly increasing positions into A

    size_t cardinality() const { return indices.size(); }
};

enum class Strategy {
    exhaustive,  // exact, exponential; the correctness anchor
    group_walk,  // reachable-sum dynamic programming; exact when it completes
    nullspace,   // k = 2: GF(2) kernel of the parity matrix
};

struct SolverOptions {
    // group_walk: max entries in the reachable-sum map.
    size_t max_map_entries = 1u << 22;
    // nullspace: max kernel combinations examined.
    size_t max_combinations = 1u << 20;
    // exhaustive: max subsets visited (guards pathological call sites).
    size_t max_subsets = 1ull << 28;
};

struct FindResult {
    std::optional<SubsetWitness> witness;
    // True when the strategy proved no witness exists; a NotFound with
    // certain = false only means the budget ran out.
    bool certain = false;
    std::string note;
};

// One GroupVector per element of A: residues are the exponents of the S
// primes mod k, counter is 1 mod t. Throws std::invalid_argument naming the
// offending element and prime if some element has a factor outside S.
// Requires gcd(k, t) = 1.
std::vector<GroupVector> encode(const std::vector<uint64_t>& A,
                                const std::vector<uint64_t>& S, uint32_t k, uint32_t t);

// Sequence length that guarantees a witness exists:
// ceil(5 k^2 t^2 (s*Omega(k) + Omega(t)) * ln(3 k t (s*Omega(k) + Omega(t)))).
uint64_t s_bound(uint64_t s, uint32_t k, uint32_t t);

FindResult find_subset(const std::vector<GroupVector>& vectors, Strategy strategy,
                       const SolverOptions& options = {});

// Exact arithmetic check: product of the selected elements is a perfect kth
// power and the cardinality is 1 mod t.
bool verify_subset(const std::vector<uint64_t>& A, const SubsetWitness& w, uint32_t k,
                   uint32_t t);

}  // namespace sigmapow
