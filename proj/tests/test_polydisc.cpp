#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/blaschke.hpp"
#include "hardy/errors.hpp"
#include "hardy/kernels.hpp"
#include "hardy/lapack.hpp"
#include "hardy/linalg.hpp"
#include "hardy/model_space.hpp"
#include "hardy/polydisc.hpp"

using hardy::CMatrix;
using hardy::cplx;
using hardy::blaschke::BlaschkeProduct;
using hardy::kernels::matmul;
namespace kernels = hardy::kernels;
namespace lapack = hardy::lapack;
namespace linalg = hardy::linalg;
namespace model_space = hardy::model_space;
namespace polydisc = hardy::polydisc;
using polydisc::PolydiscTruncation;

namespace {

double frob(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Column vector for the monomial z^alpha in the flat basis of t.
CMatrix monomial(const PolydiscTruncation& t, const std::vector<std::size_t>& alpha) {
    std::size_t flat = 0;
    for (std::size_t v = 1; v <= t.n; ++v) flat += alpha[v - 1] * t.stride(v);
    CMatrix col(t.total_dim(), 1);
    col(flat, 0) = 1.0;
    return col;
}

CMatrix hcat(const std::vector<CMatrix>& cols) {
    CMatrix out(cols[0].rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < out.rows(); ++i) out(i, j) = cols[j](i, 0);
    return out;
}

}  // namespace

TEST_CASE("strides and digits invert the flat index") {
    PolydiscTruncation t{3, 2};  // n=3, N=2, dim 27
    CHECK(t.total_dim() == 27);
    // Variable 1 slowest: stride(1) = 9, stride(2) = 3, stride(3) = 1.
    CHECK(t.stride(1) == 9);
    CHECK(t.stride(2) == 3);
    CHECK(t.stride(3) == 1);
    for (std::size_t flat = 0; flat < 27; ++flat) {
        std::size_t rebuilt = 0;
        for (std::size_t v = 1; v <= 3; ++v) {
            CHECK(t.digit(flat, v) <= 2);
            rebuilt += t.digit(flat, v) * t.stride(v);
        }
        CHECK(rebuilt == flat);
    }
}

TEST_CASE("check_limit throws past the dimension cap") {
    PolydiscTruncation t{3, 30};  // 29791 > 20000
    CHECK_THROWS_AS(t.check_limit(20000), hardy::dimension_limit_error);
    CHECK_NOTHROW(t.check_limit(30000));
}

TEST_CASE("apply_shift matches the dense shift matrix") {
    PolydiscTruncation t{2, 3};
    std::mt19937_64 gen(11);
    std::normal_distribution<double> nd;
    CMatrix x(t.total_dim(), 3);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = cplx(nd(gen), nd(gen));
    for (std::size_t var = 1; var <= 2; ++var) {
        const CMatrix s = polydisc::shift_matrix(t, var);
        CHECK(frob(polydisc::apply_shift(t, var, x) - matmul(s, x)) < 1e-13);
        CHECK(frob(polydisc::apply_shift_adjoint(t, var, x) - matmul(s.adjoint(), x)) <
              1e-13);
    }
}

TEST_CASE("shift acts as multiplication by z_var on monomials") {
    PolydiscTruncation t{2, 2};
    // z_1 * (z_1 z_2) = z_1^2 z_2 ; shifting the top degree drops to zero.
    CMatrix x = monomial(t, {1, 1});
    CMatrix y = polydisc::apply_shift(t, 1, x);
    CHECK(frob(y - monomial(t, {2, 1})) < 1e-15);
    CHECK(frob(polydisc::apply_shift(t, 1, y)) < 1e-15);  // degree 3 truncated away
}

TEST_CASE("tensor_quotient dims and compressed ops") {
    const BlaschkeProduct t2({cplx(0.3, 0.0), cplx(-0.2, 0.1)});
    const std::size_t g = model_space::guard_truncation(t2, 8);
    const auto q1 = model_space::build_model_space(BlaschkeProduct({cplx(0.0, 0.0)}), g);
    const auto q2 = model_space::build_model_space(t2, g);
    const auto q = polydisc::tensor_quotient({q1, q2});
    CHECK(q.dim() == q1.dim * q2.dim);
    CHECK(q.trunc.n == 2);
    CHECK(q.compressed_ops.size() == 2);
    // Compressed ops are the slot-wise kron of the one-variable shifts.
    const CMatrix c1 = kernels::kron(q1.shift, CMatrix::identity(q2.dim));
    const CMatrix c2 = kernels::kron(CMatrix::identity(q1.dim), q2.shift);
    CHECK(frob(q.compressed_ops[0] - c1) < 1e-12);
    CHECK(frob(q.compressed_ops[1] - c2) < 1e-12);
    CHECK(polydisc::max_doubly_commuting_residual(q) < 1e-12);
    CHECK(q.provenance == polydisc::Provenance::TensorBuilt);
}

TEST_CASE("raw_quotient accepts monomial down-sets and rejects non-co-invariant spans") {
    PolydiscTruncation t{2, 1};
    // {1, z1, z2} is co-invariant under both adjoint shifts.
    const CMatrix good = hcat({monomial(t, {0, 0}), monomial(t, {1, 0}), monomial(t, {0, 1})});
    const auto q = polydisc::raw_quotient(t, good);
    CHECK(q.dim() == 3);
    CHECK(q.provenance == polydisc::Provenance::Raw);
    // span{z1} alone: M_{z_1}^* z1 = 1 leaves the span.
    const CMatrix bad = monomial(t, {1, 0});
    CHECK_THROWS_AS(polydisc::raw_quotient(t, bad), hardy::input_error);
}

TEST_CASE("raw span {1, z1+z2, z1 z2} is not doubly commuting") {
    PolydiscTruncation t{2, 1};
    CMatrix sum = monomial(t, {1, 0}) + monomial(t, {0, 1});
    const CMatrix span = hcat({monomial(t, {0, 0}), sum, monomial(t, {1, 1})});
    const auto q = polydisc::raw_quotient(t, span);
    CHECK(q.dim() == 3);
    const double res = polydisc::max_doubly_commuting_residual(q);
    // ||C_1 C_2^* - C_2^* C_1|| = 1/2 for this span.
    CHECK(res == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("hereditary defect: explicit 4x4 golden for n=2, N=1") {
    PolydiscTruncation t{2, 1};
    double dev = -1.0;
    const CMatrix d = polydisc::hereditary_defect(t, 1, 20000, &dev);
    CHECK(dev <= 1e-12);
    // Excluding variable 1 leaves I_2 (x) P_const: keeps {1, z1}, kills {z2, z1 z2}.
    CMatrix expected(4, 4);
    expected(0, 0) = 1.0;  // constant
    expected(2, 2) = 1.0;  // z1 (stride(1) = 2)
    CHECK(frob(d - expected) < 1e-12);
}

TEST_CASE("hereditary defect routes agree for n in {2,3}, N in {1,2,3}") {
    for (std::size_t n : {2u, 3u})
        for (std::size_t N : {1u, 2u, 3u})
            for (std::size_t ex = 1; ex <= n; ++ex) {
                PolydiscTruncation t{n, N};
                double dev = -1.0;
                const CMatrix d = polydisc::hereditary_defect(t, ex, 20000, &dev);
                CHECK(dev <= 1e-12);
                // Rank is N+1: the defect keeps exactly the powers of z_ex.
                CHECK(linalg::numerical_rank(d, 1e-8) == N + 1);
            }
}

TEST_CASE("reducing_subspace_test accepts S1 (x) full and extracts the factor") {
    PolydiscTruncation t{2, 2};
    // S1 = span{1, z} inside the 3-dim one-variable truncation.
    CMatrix p1(3, 3);
    p1(0, 0) = p1(1, 1) = 1.0;
    const CMatrix p = kernels::kron(p1, CMatrix::identity(3));
    const auto res = polydisc::reducing_subspace_test(linalg::ProjectionMatrix{p, 1e-9}, t);
    CHECK(res.is_reducing);
    CHECK(res.commutation_residual < 1e-9);
    CHECK(res.reconstruction_residual < 1e-9);
    REQUIRE(res.factor.has_value());
    CHECK(frob(*res.factor - p1) < 1e-9);
}

TEST_CASE("reducing_subspace_test rejects span{z1 z2}") {
    PolydiscTruncation t{2, 1};
    const CMatrix v = monomial(t, {1, 1});
    const CMatrix p = matmul(v, v.adjoint());
    const auto res = polydisc::reducing_subspace_test(linalg::ProjectionMatrix{p, 1e-9}, t);
    CHECK(!res.is_reducing);
}

TEST_CASE("quotient projection is idempotent and self-adjoint") {
    const BlaschkeProduct th({cplx(0.2, 0.3)});
    const std::size_t g = model_space::guard_truncation(th, 7);
    const auto f = model_space::build_model_space(th, g);
    const auto q = polydisc::tensor_quotient({f, model_space::full_space(g)});
    const auto p = q.projection();
    CHECK(p.idempotence_residual() < 1e-12);
    CHECK(p.self_adjointness_residual() < 1e-12);
    CHECK(p.rank() == q.dim());
}
