#pragma once

#include <utility>

#include "hardy/cmatrix.hpp"
#include "hardy/config.hpp"
#include "hardy/kernels.hpp"
#include "hardy/lapack.hpp"

namespace hardy::linalg {

/// Square matrix certified idempotent and self-adjoint within tol.
struct ProjectionMatrix {
    CMatrix m;
    double tol = 1e-9;

    std::size_t dim() const { return m.rows(); }
    std::size_t rank() const;
    double idempotence_residual() const;
    double self_adjointness_residual() const;

    /// Throws numeric_error when the invariants fail.
    static ProjectionMatrix certify(CMatrix m, double tol);
};

/// Kronecker product, variable-1 factor leftmost. Throws dimension_limit_error
/// when the result would exceed max_dim rows or columns.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim = default_max_dimension());

/// Orthogonal projection onto the column span of v, rank decided at
/// tol_rank * sigma_max. All-zero input gives the zero projection.
ProjectionMatrix orth_projection_onto_columns(const CMatrix& v, double tol_rank = 1e-10);

/// Orthonormal basis of the column span (rank-revealing, SVD-based).
CMatrix range_basis(const CMatrix& v, double tol_rank = 1e-10);

/// Orthonormal basis of the numerical null space.
CMatrix kernel_basis(const CMatrix& a, double tol_rank = 1e-10);

/// (frobenius, operator) norms of a b* - b* a.
std::pair<double, double> commutator_norm(const CMatrix& a, const CMatrix& b);

std::size_t numerical_rank(const CMatrix& a, double tol_rank = 1e-10);

/// ||b1 b1* - b2 b2*||_op for matrices with orthonormal columns, computed on
/// the joint column space (no dense projector is formed).
double projection_distance(const CMatrix& b1, const CMatrix& b2);

/// Symmetric (Loewdin) orthonormalization b (b*b)^{-1/2}: the orthonormal
/// frame closest to b, phase-stable unlike Householder QR.
CMatrix orthonormalize_loewdin(const CMatrix& b);

}  // namespace hardy::linalg
