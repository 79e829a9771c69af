#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "hardy/errors.hpp"
#include "hardy/kernels.hpp"
#include "hardy/linalg.hpp"
#include "hardy/model_space.hpp"

using hardy::CMatrix;
using hardy::cplx;
using hardy::kernels::matmul;
using hardy::blaschke::BlaschkeProduct;
namespace model_space = hardy::model_space;

TEST_CASE("model space of z is the constants") {
    const auto ms = model_space::build_model_space(BlaschkeProduct({0.0}), 6);
    CHECK(ms.dim == 1);
    CHECK(ms.trunc == 6);
    CHECK(std::abs(ms.basis_taylor(0, 0)) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i <= 6; ++i) CHECK(std::abs(ms.basis_taylor(i, 0)) < 1e-14);
    CHECK(std::abs(ms.shift(0, 0)) < 1e-14);
}

TEST_CASE("model space of z^2 carries the 2x2 nilpotent Jordan block") {
    const auto ms = model_space::build_model_space(BlaschkeProduct({0.0, 0.0}), 5);
    REQUIRE(ms.dim == 2);
    // Basis is {1, z} up to phases; C_z maps the first onto the second and
    // kills it, so C_z^2 = 0 and ||C_z|| = 1.
    CHECK(matmul(ms.shift, ms.shift).max_abs() < 1e-14);
    CHECK(hardy::lapack::operator_norm(ms.shift) == doctest::Approx(1.0).epsilon(1e-13));
    for (const auto& ev : hardy::lapack::schur_eigenvalues(ms.shift))
        CHECK(std::abs(ev) < 1e-13);
}

TEST_CASE("single zero gives the normalized Szego kernel") {
    const cplx a(0.4, -0.2);
    const std::size_t n = model_space::guard_truncation(BlaschkeProduct({a}), 1);
    const auto ms = model_space::build_model_space(BlaschkeProduct({a}), n);
    REQUIRE(ms.dim == 1);
    // Column proportional to conj(a)^k; compare against the normalized kernel.
    std::vector<cplx> k(n + 1);
    double nrm = 0.0;
    cplx p(1.0, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        k[i] = p;
        nrm += std::norm(p);
        p *= std::conj(a);
    }
    const cplx phase = ms.basis_taylor(0, 0) / (k[0] / std::sqrt(nrm));
    CHECK(std::abs(phase) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i <= n; ++i)
        CHECK(std::abs(ms.basis_taylor(i, 0) - phase * k[i] / std::sqrt(nrm)) < 1e-12);
    // <z k_a, k_a> / ||k_a||^2 = a: the compressed shift acts as the zero.
    CHECK(std::abs(ms.shift(0, 0) - a) < 1e-12);
}

TEST_CASE("basis is orthonormal and shift-invariant under the compression") {
    const BlaschkeProduct theta({cplx(0.3, 0.1), cplx(-0.2, -0.4), cplx(0.0, 0.5)});
    const auto ms = model_space::build_model_space(theta, 0);
    REQUIRE(ms.dim == 3);
    CHECK((matmul(ms.basis_taylor.adjoint(), ms.basis_taylor) - CMatrix::identity(3)).max_abs() <
          1e-13);
    // C_z = B* S B coincides with the stored shift.
    const CMatrix s = model_space::lower_shift(ms.trunc);
    const CMatrix c = matmul(ms.basis_taylor.adjoint(), matmul(s, ms.basis_taylor));
    CHECK((c - ms.shift).max_abs() < 1e-13);
    // Eigenvalues of the compressed shift are the zeros of Theta.
    std::vector<cplx> evs = hardy::lapack::schur_eigenvalues(ms.shift);
    CHECK(hardy::blaschke::zero_matching_distance(evs, theta.zeros()) < 1e-10);
}

TEST_CASE("guard truncation grows with the zero modulus") {
    const auto small = model_space::guard_truncation(BlaschkeProduct({cplx(0.1, 0.0)}), 1);
    const auto large = model_space::guard_truncation(BlaschkeProduct({cplx(0.9, 0.0)}), 1);
    CHECK(small < large);
    CHECK(large > 300);
    // Zeros at the origin need no tail at all.
    CHECK(model_space::guard_truncation(BlaschkeProduct({0.0, 0.0}), 5) == 5);
}

TEST_CASE("truncation below the guard is rejected when not enforced") {
    const BlaschkeProduct theta({cplx(0.8, 0.0)});
    CHECK_THROWS_AS(model_space::build_model_space(theta, 10, false), hardy::input_error);
    CHECK(model_space::build_model_space(theta, 10, true).trunc >=
          model_space::guard_truncation(theta, 10));
}

TEST_CASE("projection of one: closed form vs Gram projection") {
    for (const auto& theta :
         {BlaschkeProduct({cplx(0.5, 0.2)}), BlaschkeProduct({cplx(0.3, 0.0), cplx(0.0, -0.6)}),
          BlaschkeProduct({0.0, 0.0, 0.0})}) {
        const auto r = model_space::project_one(theta);
        CHECK(r.formula1_residual < 1e-12);
        CHECK(r.formula2_residual < 1e-12);
        CHECK(r.collinearity_angle < 1e-12);
        // || P 1 ||^2 = 1 - |Theta(0)|^2.
        double n2 = 0.0;
        for (const auto& v : r.p_one) n2 += std::norm(v);
        CHECK(n2 == doctest::Approx(1.0 - std::norm(hardy::blaschke::value_at_origin(theta)))
                        .epsilon(1e-12));
    }
}

TEST_CASE("wandering regeneration fills the model space") {
    for (const auto& theta :
         {BlaschkeProduct({cplx(0.5, 0.2)}),
          BlaschkeProduct({cplx(0.3, 0.0), cplx(0.0, -0.6), cplx(-0.4, 0.1)}),
          BlaschkeProduct({0.0, 0.0})}) {
        const auto ms = model_space::build_model_space(theta, 0);
        const auto reg = model_space::wandering_regeneration(ms);
        CHECK(reg.span_dim == theta.degree());
        CHECK(reg.expected_dim == theta.degree());
        CHECK(reg.residual < 1e-11);
    }
}

TEST_CASE("recover_inner_from_shift inverts build_model_space") {
    for (const auto& theta :
         {BlaschkeProduct({cplx(0.5, 0.2)}),
          BlaschkeProduct({cplx(0.3, 0.0), cplx(0.0, -0.6), cplx(-0.4, 0.1)}),
          BlaschkeProduct({cplx(0.2, 0.2), cplx(-0.1, 0.3), cplx(0.6, 0.0), cplx(0.0, 0.0)})}) {
        const auto ms = model_space::build_model_space(theta, 0);
        const auto rec = model_space::recover_inner_from_shift(ms.shift);
        CHECK(rec.degree() == theta.degree());
        CHECK(hardy::blaschke::zero_matching_distance(rec.zeros(), theta.zeros()) < 1e-10);
    }
}

TEST_CASE("recover_inner_from_shift rejects a non-Jordan operator") {
    // A diagonal contraction with two defect directions.
    CMatrix d(2, 2);
    d(0, 0) = 0.5;
    d(1, 1) = 0.25;
    CHECK_THROWS_AS(model_space::recover_inner_from_shift(d), hardy::numeric_error);
}

TEST_CASE("full space flags and lower shift") {
    const auto fs = model_space::full_space(4);
    CHECK(fs.is_full);
    CHECK(fs.dim == 5);
    CHECK(fs.theta.is_zero_function());
    const CMatrix s = model_space::lower_shift(4);
    for (std::size_t i = 0; i <= 4; ++i)
        for (std::size_t j = 0; j <= 4; ++j)
            CHECK(s(i, j) == (i == j + 1 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
    CHECK((fs.shift - s).max_abs() == 0.0);
}
