#pragma once

#include <string>
#include <vector>

#include "sigmapow/certificate.hpp"

// Recheck a certificate from scratch. Everything here is recomputed from
// the certificate's own fields with local primitives; nothing is shared
// with the construction pipeline, so a pipeline bug cannot vouch for its
// own output.

namespace sigmapow {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall = false;

    std::string summary() const;
};

VerificationReport verify_certificate(const Certificate& cert);

}  // namespace sigmapow
