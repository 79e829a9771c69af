#pragma once

#include <string>
#include <vector>

#include "hardy/polydisc.hpp"

namespace hardy::factorization {

using polydisc::QuotientModule;

/// One tensor factor, recovered through the compressed defect product
/// prod_{j != var} (I - C_j C_j^*), which for a doubly commuting module
/// projects onto Q_var tensored with rank-one wandering vectors.
struct ExtractedFactor {
    model_space::ModelSpace space;          // one-variable factor at the ambient truncation
    bool starvation_suspect = false;        // dim in {N, N+1}: indistinguishable at this N
};

ExtractedFactor extract_factor(const QuotientModule& q, std::size_t var,
                               double tol_rank = 1e-10);

struct Factorization {
    std::vector<model_space::ModelSpace> factors;
    std::vector<blaschke::BlaschkeProduct> thetas;  // zero function marks FULL slots
    double residual = 0.0;                          // ||P_Q - (x) P_{Q_i}||_op
    bool jordan_block = false;                      // some factor proper
    std::vector<std::string> warnings;
    double dc_residual = 0.0;
};

/// Tensor factorization of a doubly commuting quotient module, one direct
/// extraction per variable plus a single tensor-equality verification.
/// Throws numeric_error when the doubly-commuting gate or the residual gate
/// fails (re-running tensor-built inputs two degrees higher to distinguish
/// truncation starvation from genuine failure).
Factorization factorize(const QuotientModule& q, const RunConfig& cfg = RunConfig{});

/// Rebuild a quotient module at a higher truncation: tensor-built inputs are
/// reconstructed from their factors, raw polynomial bases are zero-padded.
QuotientModule reembed(const QuotientModule& q, std::size_t new_degree);

}  // namespace hardy::factorization
