#pragma once

#include <utility>
#include <vector>

#include "hardy/factorization.hpp"
#include "hardy/polydisc.hpp"

namespace hardy::submodule {

using blaschke::BlaschkeProduct;
using linalg::ProjectionMatrix;
using polydisc::PolydiscTruncation;
using polydisc::QuotientModule;

/// Projection onto sum(ran P_i) for pairwise commuting projections, computed
/// by the forward telescoping sum, the reverse telescoping sum, and the
/// complement-product formula; the three must agree to 1e-11, the product
/// form is returned.
ProjectionMatrix commuting_projection_sum(const std::vector<ProjectionMatrix>& ps,
                                          double tol_comm = 1e-10);

struct ProjectionSumDiagnostics {
    ProjectionMatrix p;
    double max_commutator = 0.0;
    double max_formula_disagreement = 0.0;  // pairwise, over the three formulas
};

ProjectionSumDiagnostics commuting_projection_sum_diag(const std::vector<ProjectionMatrix>& ps,
                                                       double tol_comm = 1e-10);

/// S = sum_j Theta_{i_j}(z_{i_j}) H^2, with its exact projection pair
/// P_S = I - prod(I - P_j) and P_{S^perp} = prod(I - P_j).
struct CoDoublyCommutingSubmodule {
    PolydiscTruncation trunc;
    std::vector<std::pair<std::size_t, BlaschkeProduct>> inners;  // strictly increasing vars
    ProjectionMatrix projection;       // P_S
    CMatrix perp_basis;                // orthonormal basis of S^perp = Q
    std::vector<model_space::ModelSpace> quotient_factors;  // all n slots, FULL where no inner

    /// Largest deviation of the truncated multiplier form M M* from the
    /// model-space-basis form, measured by its action on the model space.
    double multiplier_truncation_diagnostic = 0.0;
    double lemma_sum_disagreement = 0.0;     // three-formula agreement residual
    double complementarity_residual = 0.0;   // || P_S + P_{S^perp} - I ||
    double roundtrip_complement_residual = 0.0;  // set by beurling_roundtrip only
};

/// || M_Theta^* b ||_op for a one-variable basis b on Taylor degrees
/// 0..rows(b)-1. M_Theta^* annihilates the model space exactly; on the
/// truncation the residual decays like r^N.
double multiplier_deviation(const blaschke::BlaschkeProduct& theta, const CMatrix& b);

CoDoublyCommutingSubmodule build_submodule(
    const std::vector<std::pair<std::size_t, BlaschkeProduct>>& inners,
    const PolydiscTruncation& trunc, const RunConfig& cfg = RunConfig{});

/// Q = S^perp as a quotient module (tensor of the factor model spaces);
/// asserts the doubly-commuting residual.
QuotientModule quotient_of(const CoDoublyCommutingSubmodule& s,
                           const RunConfig& cfg = RunConfig{});

/// Factorizes a doubly commuting quotient module and rebuilds the submodule
/// from its proper factors; asserts P_S = I - P_Q.
CoDoublyCommutingSubmodule beurling_roundtrip(const QuotientModule& q,
                                              const RunConfig& cfg = RunConfig{});

}  // namespace hardy::submodule
