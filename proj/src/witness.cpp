#include "sigmapow/witness.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sigmapow/arith.hpp"
#include "sigmapow/verifier.hpp"

namespace sigmapow {

namespace {

uint64_t default_start_x(uint64_t a) {
    if (a > (UINT64_MAX >> 7)) throw std::domain_error("modulus too large for interval search");
    return std::max<uint64_t>(64 * a, 1000);
}

uint64_t mpz_to_u64(const mpz_class& v, const char* what) {
    if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t()))
        throw std::overflow_error(std::string(what) + " exceeds 64 bits");
    return mpz_get_ui(v.get_mpz_t());
}

Strategy pick_strategy(const PipelineOptions& options, uint32_t k) {
    if (options.strategy) return *options.strategy;
    return k == 2 ? Strategy::nullspace : Strategy::group_walk;
}

// Assemble the certificate for a chosen subset of candidate primes. The
// products and the root are recomputed here in exact arithmetic; an inexact
// root means the solver lied, which is a bug, not an input error.
Certificate make_certificate(const std::vector<uint64_t>& chosen_primes, uint64_t a, uint64_t b,
                             uint32_t k, uint64_t t, std::optional<IntervalInfo> interval) {
    Certificate cert;
    cert.a = a;
    cert.b = b % a;
    cert.k = k;
    cert.t = t;
    cert.n = 1;
    cert.sigma_n = 1;
    for (uint64_t p : chosen_primes) {
        mpz_class mp(static_cast<unsigned long>(p));
        cert.primes.push_back(mp);
        cert.n *= mp;
        cert.sigma_n *= mp + 1;
    }
    cert.cardinality = chosen_primes.size();
    int exact = mpz_root(cert.root_m.get_mpz_t(), cert.sigma_n.get_mpz_t(), k);
    if (exact == 0) throw std::logic_error("construct_witness: selected product is not a kth power");
    cert.interval = interval;
    return cert;
}

ConstructOutcome search_candidates(const std::vector<uint64_t>& primes,
                                   const std::vector<uint64_t>& alphabet, uint64_t a, uint64_t b,
                                   uint32_t k, uint64_t t, std::optional<IntervalInfo> interval,
                                   uint64_t retry_x, const PipelineOptions& options) {
    if (t > UINT32_MAX) throw std::domain_error("construct_witness: order of b mod a is too large");
    std::vector<uint64_t> shifted;
    shifted.reserve(primes.size());
    for (uint64_t p : primes) shifted.push_back(p + 1);

    std::vector<GroupVector> vectors = encode(shifted, alphabet, k, static_cast<uint32_t>(t));
    FindResult found = find_subset(vectors, pick_strategy(options, k), options.solver);
    if (!found.witness) {
        std::string reason = "no admissible subset among " + std::to_string(primes.size()) +
                             " candidates";
        if (!found.certain) reason += " (search budget exhausted: " + found.note + ")";
        return Infeasible{reason, retry_x};
    }
    std::vector<uint64_t> chosen;
    for (size_t i : found.witness->indices) chosen.push_back(primes[i]);
    return make_certificate(chosen, a, b, k, t, interval);
}

}  // namespace

ApplicabilityReport applicability(uint64_t a, uint64_t b, uint32_t k) {
    if (a == 0) throw std::domain_error("applicability: modulus must be positive");
    ApplicabilityReport report;
    report.a = a;
    report.b = b % a;
    report.k = k;
    report.gcd_ab = std::gcd(a, report.b);
    if (k < 2) {
        report.reason = "k must be at least 2";
        return report;
    }
    if (a == 1) {
        report.gcd_ab = 1;
        report.t = 1;
        report.gcd_tk = 1;
        report.applies = true;
        return report;
    }
    if (report.gcd_ab != 1) {
        report.reason = "b and a share the factor " + std::to_string(report.gcd_ab) +
                        ", so b is not a unit mod a";
        return report;
    }
    uint64_t t = multiplicative_order(report.b, a);
    report.t = t;
    report.gcd_tk = std::gcd(t, static_cast<uint64_t>(k));
    if (*report.gcd_tk != 1) {
        report.reason = "ord_a(b) = " + std::to_string(t) + " shares the factor " +
                        std::to_string(*report.gcd_tk) + " with k = " + std::to_string(k);
        return report;
    }
    report.applies = true;
    return report;
}

ConstructOutcome construct_witness(uint64_t a, uint64_t b, uint32_t k, uint64_t x,
                                   const PipelineOptions& options) {
    ApplicabilityReport app = applicability(a, b, k);
    if (!app.applies) throw std::domain_error("construct_witness: " + app.reason);
    if (x < 4) throw std::domain_error("construct_witness: x must be at least 4");
    if (x > (UINT64_MAX >> 2)) throw std::overflow_error("construct_witness: x too large");

    std::optional<CandidateSet> cs = build_candidate_set(x, a, app.b, options.alpha,
                                                         options.trim_alphabet);
    if (!cs) {
        return Infeasible{"no smooth shifted primes in [" + std::to_string((x + 1) / 2) + ", " +
                              std::to_string(x) + "]",
                          2 * x};
    }
    std::vector<uint64_t> primes;
    for (const ShiftedPrime& sp : cs->shifted_primes) primes.push_back(sp.p);
    return search_candidates(primes, cs->alphabet, a, app.b, k, *app.t, IntervalInfo{x}, 2 * x,
                             options);
}

ConstructOutcome construct_witness_pool(uint64_t a, uint64_t b, uint32_t k,
                                        const std::vector<uint64_t>& pool,
                                        const PipelineOptions& options) {
    ApplicabilityReport app = applicability(a, b, k);
    if (!app.applies) throw std::domain_error("construct_witness_pool: " + app.reason);
    if (pool.empty()) throw std::domain_error("construct_witness_pool: empty pool");

    std::vector<uint64_t> primes(pool);
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i + 1 < primes.size(); ++i) {
        if (primes[i] == primes[i + 1])
            throw std::domain_error("construct_witness_pool: duplicate pool prime " +
                                    std::to_string(primes[i]));
    }
    std::set<uint64_t> alphabet_set;
    for (uint64_t p : primes) {
        if (!is_prime(p))
            throw std::domain_error("construct_witness_pool: pool element " + std::to_string(p) +
                                    " is not prime");
        if (p % a != app.b)
            throw std::domain_error("construct_witness_pool: pool prime " + std::to_string(p) +
                                    " is not congruent to b mod a");
        if (p == UINT64_MAX)
            throw std::overflow_error("construct_witness_pool: pool prime too large");
        for (const PrimePower& pp : factorize(p + 1).factors) alphabet_set.insert(pp.prime);
    }
    std::vector<uint64_t> alphabet(alphabet_set.begin(), alphabet_set.end());
    return search_candidates(primes, alphabet, a, app.b, k, *app.t, std::nullopt, 0, options);
}

Certificate construct_witness_scheduled(uint64_t a, uint64_t b, uint32_t k,
                                        const PipelineOptions& options) {
    uint64_t x = options.initial_x ? options.initial_x : default_start_x(a);
    std::string last_reason = "never attempted";
    for (unsigned round = 0; round <= options.max_doublings; ++round) {
        ConstructOutcome outcome = construct_witness(a, b, k, x, options);
        if (Certificate* cert = std::get_if<Certificate>(&outcome)) return std::move(*cert);
        const Infeasible& inf = std::get<Infeasible>(outcome);
        last_reason = inf.reason;
        x = inf.retry_x;
    }
    throw std::runtime_error("construct_witness_scheduled: no witness up to x = " +
                             std::to_string(x / 2) + "; last round: " + last_reason);
}

Certificate certificate_from_value(uint64_t w, uint64_t a, uint64_t b, uint32_t k) {
    if (a == 0) throw std::domain_error("certificate_from_value: modulus must be positive");
    if (k < 2) throw std::domain_error("certificate_from_value: k must be at least 2");
    if (w == 0) throw std::domain_error("certificate_from_value: w must be positive");
    if (w % a != b % a)
        throw std::domain_error("certificate_from_value: w is not congruent to b mod a");

    std::vector<uint64_t> primes;
    uint64_t sigma_w = 1;
    if (w > 1) {
        Factorization f = factorize(w);
        for (const PrimePower& pp : f.factors) {
            if (pp.exponent != 1)
                throw std::domain_error("certificate_from_value: w is not squarefree (" +
                                        std::to_string(pp.prime) + " repeats)");
            primes.push_back(pp.prime);
        }
        sigma_w = sigma(f);
    }
    std::optional<uint64_t> root = is_perfect_kth_power(sigma_w, k);
    if (!root)
        throw std::domain_error("certificate_from_value: sigma(w) = " + std::to_string(sigma_w) +
                                " is not a perfect " + std::to_string(k) + "th power");

    uint64_t t = 1;
    uint64_t bn = b % a;
    if (std::gcd(a, bn) == 1 || a == 1) {
        uint64_t ord = multiplicative_order(bn, a);
        if (primes.size() % ord == 1 % ord) t = ord;
    }
    Certificate cert;
    cert.a = a;
    cert.b = bn;
    cert.k = k;
    cert.t = t;
    for (uint64_t p : primes) cert.primes.push_back(mpz_class(static_cast<unsigned long>(p)));
    cert.n = mpz_class(static_cast<unsigned long>(w));
    cert.sigma_n = mpz_class(static_cast<unsigned long>(sigma_w));
    cert.root_m = mpz_class(static_cast<unsigned long>(*root));
    cert.cardinality = primes.size();
    return cert;
}

Certificate amplify(const Certificate& base, uint64_t min_x, const PipelineOptions& options) {
    VerificationReport gate = verify_certificate(base);
    if (!gate.overall) {
        std::string first;
        for (const CheckResult& c : gate.checks) {
            if (!c.pass) {
                first = c.name + ": " + c.detail;
                break;
            }
        }
        throw std::invalid_argument("amplify: base certificate failed verification (" + first + ")");
    }

    uint64_t a = base.a;
    uint64_t max_prime = base.primes.empty() ? 0 : mpz_to_u64(base.primes.back(), "base prime");
    if (max_prime > (UINT64_MAX >> 3))
        throw std::overflow_error("amplify: base primes exceed the supported interval range");

    uint64_t x = std::max({default_start_x(a), min_x, 2 * max_prime + 2});
    // The textbook floor x >= 4w keeps r trivially beyond w, but w explodes
    // doubly exponentially under iteration; primes beyond the base's largest
    // prime already force coprimality, so the literal floor is honored only
    // while w is small enough to enumerate past.
    if (base.n > 1 && base.n <= 25'000'000) {
        x = std::max(x, 4 * mpz_to_u64(base.n, "base witness"));
    }

    std::string last_reason = "never attempted";
    for (unsigned round = 0; round <= options.max_doublings; ++round) {
        ConstructOutcome outcome = construct_witness(a, 1 % a, base.k, x, options);
        if (Certificate* r = std::get_if<Certificate>(&outcome)) {
            if (base.primes.empty()) {
                r->b = base.b;
                r->t = base.t;
                return std::move(*r);
            }
            if (!(r->primes.front() > base.primes.back()))
                throw std::logic_error("amplify: amplification factor reused a base prime");
            Certificate merged;
            merged.a = a;
            merged.b = base.b;
            merged.k = base.k;
            merged.t = 1;
            merged.primes = base.primes;
            merged.primes.insert(merged.primes.end(), r->primes.begin(), r->primes.end());
            merged.n = base.n * r->n;
            merged.sigma_n = base.sigma_n * r->sigma_n;
            merged.root_m = base.root_m * r->root_m;
            merged.cardinality = base.cardinality + r->cardinality;
            return merged;
        }
        const Infeasible& inf = std::get<Infeasible>(outcome);
        last_reason = inf.reason;
        x = inf.retry_x;
    }
    throw std::runtime_error("amplify: no amplification factor up to x = " + std::to_string(x / 2) +
                             "; last round: " + last_reason);
}

std::vector<Certificate> witness_stream(uint64_t a, uint64_t b, uint32_t k, size_t count,
                                        const std::optional<Certificate>& seed,
                                        const PipelineOptions& options) {
    if (a == 0) throw std::domain_error("witness_stream: modulus must be positive");
    Certificate base = seed ? *seed : construct_witness_scheduled(a, b, k, options);
    if (seed) {
        VerificationReport gate = verify_certificate(base);
        if (!gate.overall) throw std::invalid_argument("witness_stream: seed failed verification");
        if (base.a != a || base.b != b % a || base.k != k)
            throw std::invalid_argument("witness_stream: seed parameters do not match the request");
    }

    std::vector<Certificate> out;
    if (count == 0) return out;

    if (b % a == 1 % a) {
        // Each round searches past every prime used so far, so the emitted
        // witnesses are standalone, pairwise coprime, and strictly growing.
        Certificate unit = certificate_from_value(1, a, b, k);
        mpz_class prev_n = base.n;
        uint64_t prev_max = base.primes.empty() ? 0 : mpz_to_u64(base.primes.back(), "seed prime");
        uint64_t floor_x = 0;
        for (size_t i = 0; i < count; ++i) {
            if (prev_max > (UINT64_MAX >> 3))
                throw std::overflow_error("witness_stream: interval range exhausted");
            floor_x = std::max(floor_x, 2 * prev_max + 2);
            Certificate cert = amplify(unit, floor_x, options);
            unsigned grow_rounds = 0;
            while (cert.n <= prev_n) {
                if (++grow_rounds > options.max_doublings)
                    throw std::runtime_error("witness_stream: could not outgrow previous witness");
                floor_x = 2 * (cert.interval ? cert.interval->x : floor_x);
                cert = amplify(unit, floor_x, options);
            }
            prev_n = cert.n;
            prev_max = mpz_to_u64(cert.primes.back(), "witness prime");
            floor_x = std::max(floor_x, 2 * prev_max + 2);
            out.push_back(std::move(cert));
        }
        return out;
    }

    Certificate current = std::move(base);
    for (size_t i = 0; i < count; ++i) {
        current = amplify(current, 0, options);
        out.push_back(current);
    }
    return out;
}

}  // namespace sigmapow
