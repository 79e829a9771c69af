#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

// Exit-code contract: input errors -> 2, resource limits -> 3,
// failed tolerance checks are reported in certificates (exit 1), not thrown.

struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_limit_error : std::runtime_error {
    explicit dimension_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hardy
