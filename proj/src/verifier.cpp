#include "sigmapow/verifier.hpp"

#include <gmp.h>

#include <cstdint>
#include <sstream>

namespace sigmapow {

namespace {

// Strong probable prime test to base a. n - 1 = d * 2^r with d odd.
bool sprp(const mpz_class& n, const mpz_class& base, const mpz_class& d, mp_bitcnt_t r) {
    mpz_class a = base % n;
    if (a == 0) return true;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (mp_bitcnt_t i = 1; i < r; ++i) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == n - 1) return true;
        if (x <= 1) return false;
    }
    return false;
}

// Deterministic below 2^64 via the standard seven-witness set; above that,
// 40 prime bases, which is only a probable-prime verdict.
bool probable_prime(const mpz_class& n, bool& proven) {
    proven = true;
    if (n < 2) return false;
    static const unsigned small[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                     73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                                     127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
    for (unsigned p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class d = n - 1;
    mp_bitcnt_t r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        static const unsigned long witnesses[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
        for (unsigned long w : witnesses) {
            if (!sprp(n, mpz_class(w), d, r)) return false;
        }
        return true;
    }
    proven = false;
    for (unsigned p : small) {
        if (!sprp(n, mpz_class(p), d, r)) return false;
    }
    return true;
}

std::string brief(const mpz_class& v) {
    std::string s = v.get_str();
    if (s.size() > 24) s = s.substr(0, 10) + "..." + s.substr(s.size() - 10) + " (" + std::to_string(s.size()) + " digits)";
    return s;
}

}  // namespace

VerificationReport verify_certificate(const Certificate& cert) {
    VerificationReport report;
    auto add = [&report](const std::string& name, bool pass, const std::string& detail) {
        report.checks.push_back({name, pass, detail});
    };

    {
        size_t bad = 0;
        size_t unproven = 0;
        std::string first_bad;
        for (const mpz_class& p : cert.primes) {
            bool proven = true;
            if (!probable_prime(p, proven)) {
                ++bad;
                if (first_bad.empty()) first_bad = brief(p);
            } else if (!proven) {
                ++unproven;
            }
        }
        std::string detail;
        if (bad) {
            detail = std::to_string(bad) + " non-prime entries, first " + first_bad;
        } else if (unproven) {
            detail = std::to_string(unproven) + " entries above 2^64 checked probabilistically (40 bases)";
        } else {
            detail = std::to_string(cert.primes.size()) + " primes, all proven";
        }
        add("primality", bad == 0, detail);
    }

    {
        bool ok = true;
        for (size_t i = 0; i + 1 < cert.primes.size(); ++i) {
            if (!(cert.primes[i] < cert.primes[i + 1])) {
                ok = false;
                break;
            }
        }
        bool positive = true;
        for (const mpz_class& p : cert.primes) positive = positive && p >= 2;
        add("ordering", ok && positive,
            ok && positive ? "strictly increasing, so squarefree" : "primes not strictly increasing");
    }

    {
        mpz_class prod = 1;
        for (const mpz_class& p : cert.primes) prod *= p;
        add("product", prod == cert.n,
            prod == cert.n ? "n = " + brief(cert.n) : "prime product " + brief(prod) + " != n " + brief(cert.n));
    }

    {
        mpz_class prod = 1;
        for (const mpz_class& p : cert.primes) prod *= p + 1;
        add("sigma_product", prod == cert.sigma_n,
            prod == cert.sigma_n ? "sigma(n) = " + brief(cert.sigma_n)
                                 : "product of (p+1) " + brief(prod) + " != sigma_n " + brief(cert.sigma_n));
    }

    {
        bool ok = false;
        std::string detail;
        if (cert.k < 2) {
            detail = "k below 2";
        } else {
            mpz_class power;
            mpz_pow_ui(power.get_mpz_t(), cert.root_m.get_mpz_t(), cert.k);
            ok = power == cert.sigma_n;
            detail = ok ? brief(cert.root_m) + "^" + std::to_string(cert.k) + " = sigma_n"
                        : brief(cert.root_m) + "^" + std::to_string(cert.k) + " != sigma_n";
        }
        add("power", ok, detail);
    }

    {
        bool ok = false;
        std::string detail;
        if (cert.a == 0) {
            detail = "modulus is zero";
        } else {
            mpz_class lhs = cert.n % mpz_class(static_cast<unsigned long>(cert.a));
            mpz_class rhs = mpz_class(static_cast<unsigned long>(cert.b % cert.a));
            ok = lhs == rhs;
            detail = ok ? "n = " + std::to_string(cert.b % cert.a) + " (mod " + std::to_string(cert.a) + ")"
                        : "n = " + lhs.get_str() + " (mod " + std::to_string(cert.a) + "), expected " +
                              rhs.get_str();
        }
        add("congruence", ok, detail);
    }

    {
        bool ok = false;
        std::string detail;
        if (cert.t == 0) {
            detail = "t is zero";
        } else if (cert.cardinality != cert.primes.size()) {
            detail = "cardinality " + std::to_string(cert.cardinality) + " != prime count " +
                     std::to_string(cert.primes.size());
        } else {
            ok = cert.cardinality % cert.t == 1 % cert.t;
            detail = ok ? std::to_string(cert.cardinality) + " = 1 (mod " + std::to_string(cert.t) + ")"
                        : std::to_string(cert.cardinality) + " != 1 (mod " + std::to_string(cert.t) + ")";
        }
        add("cardinality", ok, detail);
    }

    if (cert.interval) {
        bool ok = true;
        mpz_class x(static_cast<unsigned long>(cert.interval->x));
        for (const mpz_class& p : cert.primes) {
            if (2 * p < x || p > x) {
                ok = false;
                break;
            }
        }
        add("interval", ok,
            ok ? "all primes in [x/2, x], x = " + std::to_string(cert.interval->x)
               : "a prime falls outside [x/2, x], x = " + std::to_string(cert.interval->x));
    }

    report.overall = true;
    for (const CheckResult& c : report.checks) report.overall = report.overall && c.pass;
    return report;
}

std::string VerificationReport::summary() const {
    std::ostringstream out;
    for (const CheckResult& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    }
    out << (overall ? "VALID" : "INVALID") << "\n";
    return out.str();
}

}  // namespace sigmapow
