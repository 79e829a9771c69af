#include "hardy/kernels.hpp"

#include <algorithm>
#include <cstring>

#include <cblas.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardy::kernels {

namespace {

constexpr std::size_t kBlock = 64;
constexpr std::size_t kParallelFlopCutoff = 1u << 22;

// ikj loop order: the inner loop runs over contiguous memory in b and c.
void gemm_rows(const CMatrix& a, const CMatrix& b, CMatrix& c, std::size_t i0, std::size_t i1) {
    const std::size_t n = a.cols();
    const std::size_t m = b.cols();
    const cplx* bp = b.data();
    for (std::size_t ib = i0; ib < i1; ib += kBlock) {
        const std::size_t ie = std::min(ib + kBlock, i1);
        for (std::size_t kb = 0; kb < n; kb += kBlock) {
            const std::size_t ke = std::min(kb + kBlock, n);
            for (std::size_t i = ib; i < ie; ++i) {
                cplx* ci = c.data() + i * m;
                for (std::size_t k = kb; k < ke; ++k) {
                    const cplx aik = a(i, k);
                    if (aik == cplx(0.0, 0.0)) continue;
                    const cplx* bk = bp + k * m;
                    for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
                }
            }
        }
    }
}

}  // namespace

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b) {
    assert(a.cols() == b.rows());
    CMatrix c(a.rows(), b.cols());
    gemm_rows(a, b, c, 0, a.rows());
    return c;
}

CMatrix matmul_omp(const CMatrix& a, const CMatrix& b) {
    assert(a.cols() == b.rows());
    CMatrix c(a.rows(), b.cols());
    const std::size_t nr = a.rows();
#ifdef _OPENMP
#pragma omp parallel
    {
        const std::size_t nt = static_cast<std::size_t>(omp_get_num_threads());
        const std::size_t t = static_cast<std::size_t>(omp_get_thread_num());
        const std::size_t chunk = (nr + nt - 1) / nt;
        const std::size_t i0 = std::min(t * chunk, nr);
        const std::size_t i1 = std::min(i0 + chunk, nr);
        gemm_rows(a, b, c, i0, i1);
    }
#else
    gemm_rows(a, b, c, 0, nr);
#endif
    return c;
}

CMatrix kron_serial(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    const std::size_t bc = b.cols();
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ib = 0; ib < b.rows(); ++ib) {
            cplx* row = c.data() + (ia * b.rows() + ib) * c.cols();
            for (std::size_t ja = 0; ja < a.cols(); ++ja) {
                const cplx aij = a(ia, ja);
                const cplx* brow = b.data() + ib * bc;
                cplx* dst = row + ja * bc;
                if (aij == cplx(0.0, 0.0)) continue;
                for (std::size_t jb = 0; jb < bc; ++jb) dst[jb] = aij * brow[jb];
            }
        }
    return c;
}

CMatrix kron_omp(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    const std::size_t bc = b.cols();
    const long long total = static_cast<long long>(a.rows()) * static_cast<long long>(b.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long r = 0; r < total; ++r) {
        const std::size_t ia = static_cast<std::size_t>(r) / b.rows();
        const std::size_t ib = static_cast<std::size_t>(r) % b.rows();
        cplx* row = c.data() + static_cast<std::size_t>(r) * c.cols();
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx aij = a(ia, ja);
            if (aij == cplx(0.0, 0.0)) continue;
            const cplx* brow = b.data() + ib * bc;
            cplx* dst = row + ja * bc;
            for (std::size_t jb = 0; jb < bc; ++jb) dst[jb] = aij * brow[jb];
        }
    }
    return c;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    assert(a.cols() == b.rows());
    const std::size_t flops = a.rows() * a.cols() * b.cols();
    if (flops < (std::size_t{1} << 12)) return matmul_serial(a, b);
    CMatrix c(a.rows(), b.cols());
    const cplx one(1.0, 0.0), zero(0.0, 0.0);
    cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
                static_cast<int>(b.cols()), static_cast<int>(a.cols()), &one, a.data(),
                static_cast<int>(a.cols()), b.data(), static_cast<int>(b.cols()), &zero,
                c.data(), static_cast<int>(b.cols()));
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t out = a.size() * b.size();
    return out >= kParallelFlopCutoff ? kron_omp(a, b) : kron_serial(a, b);
}

}  // namespace hardy::kernels
