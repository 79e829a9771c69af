#pragma once

#include <vector>

#include "hardy/blaschke.hpp"
#include "hardy/cmatrix.hpp"

namespace hardy::model_space {

using blaschke::BlaschkeProduct;

/// One-variable quotient module H^2 / Theta H^2 on a truncated Taylor basis.
/// Full-space instances (Theta the zero function) carry the whole truncated
/// Hardy space and are flagged so downstream logic knows the truncation, not
/// the function, bounds the dimension.
struct ModelSpace {
    BlaschkeProduct theta = BlaschkeProduct::zero_function();
    bool is_full = false;
    std::size_t dim = 0;
    std::size_t trunc = 0;
    CMatrix basis_taylor;  // (trunc+1) x dim, orthonormal columns
    CMatrix shift;         // dim x dim compressed shift C_z
};

/// (trunc+1)-dimensional lower shift (multiplication by z, truncated).
CMatrix lower_shift(std::size_t trunc);

/// Smallest embedding truncation t >= requested with
/// r^(t - degree) / (1 - r) <= 1e-13, r = max |zero|.
std::size_t guard_truncation(const BlaschkeProduct& theta, std::size_t requested);

/// Takenaka-Malmquist basis and compressed shift for a non-zero-function
/// Theta. trunc below the guard threshold is raised automatically when
/// enforce_guard, rejected otherwise.
ModelSpace build_model_space(const BlaschkeProduct& theta, std::size_t trunc,
                             bool enforce_guard = true);

/// The truncated Hardy space itself (Theta identically zero).
ModelSpace full_space(std::size_t trunc);

struct ProjectOneResult {
    std::vector<cplx> p_one;          // P_Q 1 in the model-space basis
    std::vector<cplx> pcp_one;        // (P_Q P_C P_Q) 1 in the basis
    double formula1_residual = 0.0;   // closed form vs Gram projection of 1
    double formula2_residual = 0.0;   // defect formula vs matrix route
    double collinearity_angle = 0.0;  // angle between P1 and (P P_C P)1
    double route_disagreement = 0.0;  // max of the two residuals
};

/// Projection of the constant function onto the model space, computed from
/// the closed form 1 - conj(Theta(0)) Theta and again by Gram projection;
/// throws numeric_error when the two routes disagree beyond 1e-10.
ProjectOneResult project_one(const BlaschkeProduct& theta, std::size_t trunc = 0);

struct RegenerationResult {
    std::size_t span_dim = 0;
    std::size_t expected_dim = 0;
    double residual = 0.0;  // || I - P_krylov || on the model space
};

/// Defect space L = ran(I - C_z C_z*) and the Krylov span {C_z^l L}.
RegenerationResult wandering_regeneration(const ModelSpace& ms);

/// Inverse problem: zeros of Theta from the spectrum of a Jordan-block
/// shift (defect rank <= 1). Constant normalized to 1.
BlaschkeProduct recover_inner_from_shift(const CMatrix& shift, double tol = 1e-8);

}  // namespace hardy::model_space
