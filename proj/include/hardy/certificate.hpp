#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/config.hpp"

namespace hardy::certificate {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "hardy-modules 1.0.0";

struct Check {
    std::string name;
    std::string anchor;  // label of the statement the check instantiates
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationCertificate {
    std::string command;
    std::string input_digest;
    std::vector<Check> checks;
    ordered_json tolerances = ordered_json::object();
    ordered_json payload = ordered_json::object();
    double wall_time_ms = 0.0;

    bool pass() const;
    void add(std::string name, std::string anchor, double residual, double tolerance);
    void add_bool(std::string name, std::string anchor, bool ok);
    ordered_json to_json() const;
};

/// FNV-1a 64-bit content hash, hex-encoded.
std::string content_digest(const std::string& content);

void fill_tolerances(VerificationCertificate& cert, const RunConfig& cfg);

}  // namespace hardy::certificate
