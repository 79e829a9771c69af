#include "hardy/certificate.hpp"

#include <cstdint>
#include <cstdio>

namespace hardy::certificate {

bool VerificationCertificate::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerificationCertificate::add(std::string name, std::string anchor, double residual,
                                  double tolerance) {
    checks.push_back(
        {std::move(name), std::move(anchor), residual, tolerance, residual <= tolerance});
}

void VerificationCertificate::add_bool(std::string name, std::string anchor, bool ok) {
    checks.push_back({std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.0, ok});
}

ordered_json VerificationCertificate::to_json() const {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["basis_order"] = "multi-indices lexicographic, variable 1 slowest";
    j["tolerances"] = tolerances;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["anchor"] = c.anchor;
        cj["residual"] = c.residual;
        cj["tolerance"] = c.tolerance;
        cj["pass"] = c.pass;
        arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    j["result"] = payload;
    j["pass"] = pass();
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

std::string content_digest(const std::string& content) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

void fill_tolerances(VerificationCertificate& cert, const RunConfig& cfg) {
    cert.tolerances["tol_rank"] = cfg.tol_rank;
    cert.tolerances["tol_dc"] = cfg.tol_dc;
    cert.tolerances["tol_fact"] = cfg.tol_fact;
    cert.tolerances["tol_comm"] = cfg.tol_comm;
    cert.tolerances["truncation"] = cfg.truncation;
    cert.tolerances["max_dimension"] = cfg.max_dimension;
    cert.tolerances["seed"] = cfg.seed;
}

}  // namespace hardy::certificate
