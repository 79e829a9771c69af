#include "hardy/lapack.hpp"

#include <algorithm>

#include <lapacke.h>

namespace hardy::lapack {

namespace {

lapack_complex_double* lp(CMatrix& m) { return reinterpret_cast<lapack_complex_double*>(m.data()); }

}  // namespace

SVD svd(const CMatrix& a) {
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    SVD out;
    out.sigma.assign(static_cast<std::size_t>(k), 0.0);
    if (k == 0) return out;
    CMatrix work = a;
    out.u = CMatrix(a.rows(), static_cast<std::size_t>(k));
    out.vh = CMatrix(static_cast<std::size_t>(k), a.cols());
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(1, k - 1)));
    const lapack_int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S', m, n, lp(work), n,
                                           out.sigma.data(), lp(out.u), k, lp(out.vh), n,
                                           superb.data());
    if (info != 0) throw numeric_error("zgesvd failed, info=" + std::to_string(info));
    return out;
}

std::vector<double> singular_values(const CMatrix& a) {
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    if (k == 0) return {};
    CMatrix work = a;
    std::vector<double> s(static_cast<std::size_t>(k), 0.0);
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(1, k - 1)));
    const lapack_int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'N', m, n, lp(work), n,
                                           s.data(), nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) throw numeric_error("zgesvd failed, info=" + std::to_string(info));
    return s;
}

double operator_norm(const CMatrix& a) {
    const auto s = singular_values(a);
    return s.empty() ? 0.0 : s.front();
}

CMatrix qr_orth(const CMatrix& a) {
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    if (n == 0 || m == 0) return a;
    if (n > m) throw numeric_error("qr_orth: more columns than rows");
    CMatrix work = a;
    std::vector<cplx> tau(static_cast<std::size_t>(std::min(m, n)));
    lapack_int info = LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, m, n, lp(work), n,
                                     reinterpret_cast<lapack_complex_double*>(tau.data()));
    if (info != 0) throw numeric_error("zgeqrf failed, info=" + std::to_string(info));
    info = LAPACKE_zungqr(LAPACK_ROW_MAJOR, m, n, n, lp(work), n,
                          reinterpret_cast<lapack_complex_double*>(tau.data()));
    if (info != 0) throw numeric_error("zungqr failed, info=" + std::to_string(info));
    return work;
}

std::vector<cplx> schur_eigenvalues(const CMatrix& a) {
    if (a.rows() != a.cols()) throw numeric_error("schur_eigenvalues: square matrix required");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    if (n == 0) return {};
    CMatrix work = a;
    std::vector<cplx> w(static_cast<std::size_t>(n));
    lapack_int sdim = 0;
    const lapack_int info =
        LAPACKE_zgees(LAPACK_ROW_MAJOR, 'N', 'N', nullptr, n, lp(work), n, &sdim,
                      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, n);
    if (info != 0) throw numeric_error("zgees failed, info=" + std::to_string(info));
    return w;
}

}  // namespace hardy::lapack
