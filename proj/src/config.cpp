#include "hardy/config.hpp"

#include <cstdlib>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

void RunConfig::validate() const {
    auto check_tol = [](double t, const char* name) {
        if (!(t > 0.0 && t < 1e-2))
            throw input_error(std::string(name) + " must lie in (0, 1e-2)");
    };
    check_tol(tol_rank, "tol_rank");
    check_tol(tol_dc, "tol_dc");
    check_tol(tol_fact, "tol_fact");
    check_tol(tol_comm, "tol_comm");
    if (truncation < 1) throw input_error("truncation must be >= 1");
    if (max_dimension < 1) throw input_error("max_dimension must be >= 1");
}

std::size_t default_max_dimension() {
    if (const char* env = std::getenv("HARDY_MODULES_MAX_DIM")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 20000;
}

}  // namespace hardy
