#pragma once

#include "hardy/cmatrix.hpp"

namespace hardy::kernels {

// Serial reference implementations, kept for testing the parallel paths.
CMatrix matmul_serial(const CMatrix& a, const CMatrix& b);
CMatrix kron_serial(const CMatrix& a, const CMatrix& b);

// OpenMP-parallel kernels (blocked matmul, row-parallel kron).
CMatrix matmul_omp(const CMatrix& a, const CMatrix& b);
CMatrix kron_omp(const CMatrix& a, const CMatrix& b);

// Production entry points: matmul delegates to BLAS zgemm above a small
// cutoff (serial kernel below); kron dispatches serial/parallel by size.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace hardy::kernels
