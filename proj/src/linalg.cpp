#include "hardy/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hardy::linalg {

using kernels::matmul;

std::size_t ProjectionMatrix::rank() const {
    cplx tr(0.0, 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    return static_cast<std::size_t>(std::llround(tr.real()));
}

double ProjectionMatrix::idempotence_residual() const {
    return (matmul(m, m) - m).frobenius_norm();
}

double ProjectionMatrix::self_adjointness_residual() const {
    return (m - m.adjoint()).frobenius_norm();
}

ProjectionMatrix ProjectionMatrix::certify(CMatrix m, double tol) {
    if (m.rows() != m.cols()) throw numeric_error("projection matrix must be square");
    if (!m.is_finite()) throw numeric_error("projection matrix has non-finite entries");
    ProjectionMatrix p{std::move(m), tol};
    if (p.idempotence_residual() > tol)
        throw numeric_error("projection idempotence residual above tolerance");
    if (p.self_adjointness_residual() > tol)
        throw numeric_error("projection self-adjointness residual above tolerance");
    cplx tr(0.0, 0.0);
    for (std::size_t i = 0; i < p.m.rows(); ++i) tr += p.m(i, i);
    if (std::abs(tr.real() - std::llround(tr.real())) > tol || std::abs(tr.imag()) > tol)
        throw numeric_error("projection trace is not near an integer");
    return p;
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim) {
    if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim)
        throw dimension_limit_error("kron result exceeds configured dimension limit");
    return kernels::kron(a, b);
}

CMatrix range_basis(const CMatrix& v, double tol_rank) {
    if (v.cols() == 0 || v.rows() == 0) return CMatrix(v.rows(), 0);
    const auto dec = lapack::svd(v);
    const double smax = dec.sigma.empty() ? 0.0 : dec.sigma.front();
    std::size_t r = 0;
    while (r < dec.sigma.size() && dec.sigma[r] > tol_rank * smax && dec.sigma[r] > 0.0) ++r;
    return dec.u.block(0, 0, v.rows(), r);
}

ProjectionMatrix orth_projection_onto_columns(const CMatrix& v, double tol_rank) {
    if (v.cols() == 0) throw numeric_error("orth_projection_onto_columns: no columns");
    const CMatrix u = range_basis(v, tol_rank);
    CMatrix p = u.cols() > 0 ? matmul(u, u.adjoint()) : CMatrix(v.rows(), v.rows());
    return ProjectionMatrix::certify(std::move(p), 10.0 * tol_rank);
}

CMatrix kernel_basis(const CMatrix& a, double tol_rank) {
    if (a.cols() == 0) return CMatrix(0, 0);
    if (a.rows() == 0) return CMatrix::identity(a.cols());
    const auto dec = lapack::svd(a);
    const double smax = dec.sigma.empty() ? 0.0 : dec.sigma.front();
    // Right singular vectors for sigma <= tol * sigma_max, plus the cols
    // beyond min(m, n) that zgesvd never reports.
    std::size_t r = 0;
    while (r < dec.sigma.size() && dec.sigma[r] > tol_rank * smax && dec.sigma[r] > 0.0) ++r;
    const std::size_t null_dim = a.cols() - r;
    CMatrix out(a.cols(), null_dim);
    const CMatrix v = dec.vh.adjoint();  // cols x k
    for (std::size_t j = r; j < dec.sigma.size(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) out(i, j - r) = v(i, j);
    // Orthocomplement of the reported right singular vectors when cols > rows.
    if (a.cols() > dec.sigma.size()) {
        // Complete v to a unitary basis via QR of [v | I]; the trailing columns
        // of Q are orthonormal and orthogonal to span(v).
        CMatrix ext = lapack::qr_orth(CMatrix::hcat(v, CMatrix::identity(a.cols())).block(
            0, 0, a.cols(), a.cols()));
        std::size_t pos = dec.sigma.size() - r;
        for (std::size_t j = v.cols(); j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.cols(); ++i) out(i, pos + j - v.cols()) = ext(i, j);
    }
    return out;
}

std::pair<double, double> commutator_norm(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw numeric_error("commutator_norm: square matrices of equal dimension required");
    const CMatrix bs = b.adjoint();
    const CMatrix c = matmul(a, bs) - matmul(bs, a);
    return {c.frobenius_norm(), lapack::operator_norm(c)};
}

std::size_t numerical_rank(const CMatrix& a, double tol_rank) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    const auto s = lapack::singular_values(a);
    const double smax = s.empty() ? 0.0 : s.front();
    std::size_t r = 0;
    while (r < s.size() && s[r] > tol_rank * smax && s[r] > 0.0) ++r;
    return r;
}

double projection_distance(const CMatrix& b1, const CMatrix& b2) {
    const std::size_t k1 = b1.cols(), k2 = b2.cols();
    if (k1 == 0 && k2 == 0) return 0.0;
    if (k1 == 0 || k2 == 0) return 1.0;
    // For orthonormal bases, || P1 - P2 || = max(||(I-P1) b2||, ||(I-P2) b1||);
    // unlike the eigenvalue route this stays accurate near zero.
    const CMatrix r2 = b2 - matmul(b1, matmul(b1.adjoint(), b2));
    const CMatrix r1 = b1 - matmul(b2, matmul(b2.adjoint(), b1));
    return std::max(lapack::operator_norm(r1), lapack::operator_norm(r2));
}

CMatrix orthonormalize_loewdin(const CMatrix& b) {
    if (b.cols() == 0) return b;
    const auto dec = lapack::svd(b);
    if (!dec.sigma.empty() && dec.sigma.back() < 1e-12 * dec.sigma.front())
        throw numeric_error("orthonormalize_loewdin: rank-deficient input");
    return matmul(dec.u, dec.vh);
}

}  // namespace hardy::linalg
