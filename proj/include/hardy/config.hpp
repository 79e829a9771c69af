#pragma once

#include <cstddef>
#include <cstdint>

namespace hardy {

/// Tolerance and resource knobs shared by all commands.
struct RunConfig {
    std::size_t truncation = 8;      // per-variable Taylor degree N
    double tol_rank = 1e-10;         // relative singular-value threshold
    double tol_dc = 1e-9;            // doubly-commuting residual gate
    double tol_fact = 1e-8;          // factorization residual gate
    double tol_comm = 1e-10;         // commuting-projection precondition
    std::size_t max_dimension = 20000;
    std::uint64_t seed = 1;

    void validate() const;
};

/// HARDY_MODULES_MAX_DIM env override, 20000 otherwise.
std::size_t default_max_dimension();

}  // namespace hardy
