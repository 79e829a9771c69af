#pragma once

#include <vector>

#include "hardy/cmatrix.hpp"

namespace hardy::lapack {

struct SVD {
    CMatrix u;                    // rows x k
    std::vector<double> sigma;    // k = min(rows, cols), descending
    CMatrix vh;                   // k x cols
};

/// Economy-size SVD.
SVD svd(const CMatrix& a);

/// Singular values only.
std::vector<double> singular_values(const CMatrix& a);

/// Largest singular value (0 for empty input).
double operator_norm(const CMatrix& a);

/// Orthonormal basis Q of the column space via Householder QR (no pivoting;
/// returns all cols(a) columns, rank handling is the caller's business).
CMatrix qr_orth(const CMatrix& a);

/// Eigenvalues from the diagonal of the Schur triangular factor.
std::vector<cplx> schur_eigenvalues(const CMatrix& a);

}  // namespace hardy::lapack
