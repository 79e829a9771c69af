#include "hardy/model_space.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"
#include "hardy/linalg.hpp"

namespace hardy::model_space {

using kernels::matmul;

CMatrix lower_shift(std::size_t trunc) {
    CMatrix s(trunc + 1, trunc + 1);
    for (std::size_t i = 0; i + 1 <= trunc; ++i) s(i + 1, i) = 1.0;
    return s;
}

std::size_t guard_truncation(const BlaschkeProduct& theta, std::size_t requested) {
    const std::size_t d = theta.degree();
    const double r = theta.max_zero_modulus();
    std::size_t t = std::max(requested, d);
    if (r <= 0.0) return t;
    const double target = 1e-13 * (1.0 - r);
    // r^(t - d) <= target
    const std::size_t extra =
        static_cast<std::size_t>(std::ceil(std::log(target) / std::log(r)));
    return std::max(t, d + extra);
}

ModelSpace build_model_space(const BlaschkeProduct& theta, std::size_t trunc,
                             bool enforce_guard) {
    if (theta.is_zero_function())
        throw input_error("build_model_space: zero function has no model space; use full_space");
    const std::size_t d = theta.degree();
    const std::size_t guard = guard_truncation(theta, trunc);
    if (guard > trunc) {
        if (!enforce_guard)
            throw input_error("build_model_space: truncation below guard threshold");
        trunc = guard;
    }

    ModelSpace ms;
    ms.theta = theta;
    ms.dim = d;
    ms.trunc = trunc;
    ms.basis_taylor = CMatrix(trunc + 1, d);

    // Takenaka-Malmquist: e_k = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * B_{k-1},
    // with B_{k-1} the Blaschke product of the first k-1 zeros.
    std::vector<cplx> partial(trunc + 1, cplx(0.0, 0.0));
    partial[0] = 1.0;
    std::vector<cplx> col(trunc + 1), next(trunc + 1);
    for (std::size_t k = 0; k < d; ++k) {
        const cplx a = theta.zeros()[k];
        const cplx ac = std::conj(a);
        const double w = std::sqrt(1.0 - std::norm(a));
        // col = partial * szego-kernel series: w * sum conj(a)^m z^m
        std::fill(col.begin(), col.end(), cplx(0.0, 0.0));
        for (std::size_t j = 0; j <= trunc; ++j) {
            if (partial[j] == cplx(0.0, 0.0)) continue;
            cplx p = w * partial[j];
            for (std::size_t m = j; m <= trunc; ++m) {
                col[m] += p;
                p *= ac;
            }
        }
        for (std::size_t i = 0; i <= trunc; ++i) ms.basis_taylor(i, k) = col[i];
        // partial *= (z - a)/(1 - conj(a) z)
        const double fw = 1.0 - std::norm(a);
        std::fill(next.begin(), next.end(), cplx(0.0, 0.0));
        for (std::size_t j = 0; j <= trunc; ++j) {
            if (partial[j] == cplx(0.0, 0.0)) continue;
            next[j] += partial[j] * (-a);
            cplx p = partial[j] * fw;
            for (std::size_t m = 1; j + m <= trunc; ++m) {
                next[j + m] += p;
                p *= ac;
            }
        }
        partial.swap(next);
    }

    // The truncated TM columns are orthonormal to ~1e-13 under the guard;
    // polish to machine precision so downstream projections are exact.
    if (d > 0) ms.basis_taylor = linalg::orthonormalize_loewdin(ms.basis_taylor);
    const CMatrix s = lower_shift(trunc);
    ms.shift = matmul(ms.basis_taylor.adjoint(), matmul(s, ms.basis_taylor));
    return ms;
}

ModelSpace full_space(std::size_t trunc) {
    ModelSpace ms;
    ms.is_full = true;
    ms.dim = trunc + 1;
    ms.trunc = trunc;
    ms.basis_taylor = CMatrix::identity(trunc + 1);
    ms.shift = lower_shift(trunc);
    return ms;
}

ProjectOneResult project_one(const BlaschkeProduct& theta, std::size_t trunc) {
    if (theta.is_zero_function()) throw input_error("project_one: zero function");
    const ModelSpace ms = build_model_space(theta, trunc);
    const std::size_t d = ms.dim;
    ProjectOneResult out;
    out.p_one.assign(d, cplx(0.0, 0.0));
    out.pcp_one.assign(d, cplx(0.0, 0.0));
    if (d == 0) return out;

    const cplx t0 = blaschke::value_at_origin(theta);
    // Route (i): Taylor series of 1 - conj(Theta(0)) Theta, projected to basis.
    auto series = blaschke::taylor_coefficients(theta, ms.trunc);
    CMatrix closed(ms.trunc + 1, 1);
    for (std::size_t i = 0; i <= ms.trunc; ++i) closed(i, 0) = -std::conj(t0) * series[i];
    closed(0, 0) += 1.0;
    const CMatrix route1 = matmul(ms.basis_taylor.adjoint(), closed);

    // Route (ii): Gram projection of the constant function.
    CMatrix one(ms.trunc + 1, 1);
    one(0, 0) = 1.0;
    const CMatrix route2 = matmul(ms.basis_taylor.adjoint(), one);

    // The closed form must itself lie in the span, not just agree after
    // projection.
    const CMatrix back = matmul(ms.basis_taylor, route1);
    out.formula1_residual = std::max((route1 - route2).frobenius_norm(),
                                     (back - closed).frobenius_norm());

    const double scale = 1.0 - std::norm(t0);
    for (std::size_t k = 0; k < d; ++k) {
        out.p_one[k] = route2(k, 0);
        out.pcp_one[k] = scale * route2(k, 0);
    }

    // Cross-check (P_Q P_C P_Q) 1 against the matrix route.
    const CMatrix pc =
        matmul(ms.basis_taylor.adjoint(), matmul(one, matmul(one.adjoint(), ms.basis_taylor)));
    const CMatrix v = matmul(pc, route2);
    double cross = 0.0;
    for (std::size_t k = 0; k < d; ++k) cross += std::norm(v(k, 0) - out.pcp_one[k]);
    out.formula2_residual = std::sqrt(cross);

    // P1 lies in ran(P P_C P): rank-one range, so a collinearity angle. The
    // sine is the norm of the component orthogonal to P1, computed directly
    // so it stays accurate near zero.
    double nu = 0.0, nv = 0.0;
    cplx dot(0.0, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        nu += std::norm(out.p_one[k]);
        nv += std::norm(v(k, 0));
        dot += std::conj(out.p_one[k]) * v(k, 0);
    }
    if (nu > 0.0 && nv > 0.0) {
        double perp = 0.0;
        for (std::size_t k = 0; k < d; ++k)
            perp += std::norm(v(k, 0) - (dot / nu) * out.p_one[k]);
        out.collinearity_angle = std::asin(std::min(1.0, std::sqrt(perp / nv)));
    }

    out.route_disagreement = std::max(out.formula1_residual, out.formula2_residual);
    if (out.route_disagreement > 1e-10)
        throw numeric_error("project_one: the two computation routes disagree");
    return out;
}

RegenerationResult wandering_regeneration(const ModelSpace& ms) {
    RegenerationResult out;
    out.expected_dim = ms.dim;
    if (ms.dim == 0) return out;
    const CMatrix defect = CMatrix::identity(ms.dim) - matmul(ms.shift, ms.shift.adjoint());
    const CMatrix l = linalg::range_basis(defect, 1e-10);
    CMatrix krylov = l;
    CMatrix cur = l;
    for (std::size_t step = 1; step < ms.dim; ++step) {
        cur = matmul(ms.shift, cur);
        krylov = CMatrix::hcat(krylov, cur);
    }
    const CMatrix q = linalg::range_basis(krylov, 1e-10);
    out.span_dim = q.cols();
    const CMatrix p = matmul(q, q.adjoint());
    out.residual = (CMatrix::identity(ms.dim) - p).frobenius_norm();
    return out;
}

BlaschkeProduct recover_inner_from_shift(const CMatrix& shift, double tol) {
    if (shift.rows() != shift.cols())
        throw numeric_error("recover_inner_from_shift: square matrix required");
    const std::size_t d = shift.rows();
    if (d == 0) return BlaschkeProduct(std::vector<cplx>{});
    if (lapack::operator_norm(shift) > 1.0 + tol)
        throw numeric_error("recover_inner_from_shift: not a contraction");
    const CMatrix defect = CMatrix::identity(d) - matmul(shift, shift.adjoint());
    const auto s = lapack::singular_values(defect);
    if (s.size() > 1 && s[1] > tol)
        throw numeric_error("recover_inner_from_shift: defect rank exceeds 1");
    auto eigs = lapack::schur_eigenvalues(shift);
    for (auto& ev : eigs) {
        if (std::abs(ev) >= 1.0 - tol)
            throw numeric_error("recover_inner_from_shift: eigenvalue too close to the circle");
    }
    return BlaschkeProduct(std::move(eigs));
}

}  // namespace hardy::model_space
