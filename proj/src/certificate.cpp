#include "sigmapow/certificate.hpp"

#include <json.hpp>

#include <stdexcept>

namespace sigmapow {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::runtime_error("certificate field \"" + field + "\": " + why);
}

uint64_t require_unsigned(const ordered_json& j, const std::string& field) {
    if (!j.contains(field)) bad_field(field, "missing");
    const auto& v = j.at(field);
    if (!v.is_number_unsigned()) bad_field(field, "must be a non-negative integer");
    return v.get<uint64_t>();
}

mpz_class require_decimal(const ordered_json& v, const std::string& field) {
    if (!v.is_string()) bad_field(field, "must be a decimal string");
    const std::string s = v.get<std::string>();
    if (s.empty()) bad_field(field, "empty decimal string");
    for (char c : s) {
        if (c < '0' || c > '9') bad_field(field, "not a decimal digit string");
    }
    return mpz_class(s, 10);
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["a"] = cert.a;
    j["b"] = cert.b;
    j["k"] = cert.k;
    j["t"] = cert.t;
    ordered_json primes = ordered_json::array();
    for (const mpz_class& p : cert.primes) primes.push_back(p.get_str());
    j["primes"] = primes;
    j["n"] = cert.n.get_str();
    j["sigma_n"] = cert.sigma_n.get_str();
    j["root_m"] = cert.root_m.get_str();
    j["cardinality"] = cert.cardinality;
    if (cert.interval) {
        j["interval"] = ordered_json{{"x", cert.interval->x}};
    }
    return j.dump();
}

Certificate certificate_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("certificate: not valid JSON");
    if (!j.is_object()) throw std::runtime_error("certificate: not a JSON object");

    static const char* known[] = {"a", "b", "k", "t", "primes", "n", "sigma_n", "root_m",
                                  "cardinality", "interval"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* name : known) ok = ok || key == name;
        if (!ok) bad_field(key, "unrecognized field");
        (void)value;
    }

    Certificate cert;
    cert.a = require_unsigned(j, "a");
    if (cert.a == 0) bad_field("a", "must be positive");
    cert.b = require_unsigned(j, "b");
    uint64_t k = require_unsigned(j, "k");
    if (k < 2 || k > UINT32_MAX) bad_field("k", "must be an integer in [2, 2^32)");
    cert.k = static_cast<uint32_t>(k);
    cert.t = require_unsigned(j, "t");
    if (cert.t == 0) bad_field("t", "must be positive");

    if (!j.contains("primes")) bad_field("primes", "missing");
    const auto& primes = j.at("primes");
    if (!primes.is_array()) bad_field("primes", "must be an array of decimal strings");
    for (const auto& entry : primes) {
        cert.primes.push_back(require_decimal(entry, "primes"));
    }

    if (!j.contains("n")) bad_field("n", "missing");
    cert.n = require_decimal(j.at("n"), "n");
    if (!j.contains("sigma_n")) bad_field("sigma_n", "missing");
    cert.sigma_n = require_decimal(j.at("sigma_n"), "sigma_n");
    if (!j.contains("root_m")) bad_field("root_m", "missing");
    cert.root_m = require_decimal(j.at("root_m"), "root_m");
    cert.cardinality = require_unsigned(j, "cardinality");

    if (j.contains("interval")) {
        const auto& iv = j.at("interval");
        if (!iv.is_object()) bad_field("interval", "must be an object");
        IntervalInfo info;
        info.x = require_unsigned(iv, "x");
        if (info.x == 0) bad_field("interval.x", "must be positive");
        for (const auto& [key, value] : iv.items()) {
            if (key != "x") bad_field("interval." + key, "unrecognized field");
            (void)value;
        }
        cert.interval = info;
    }
    return cert;
}

}  // namespace sigmapow
