#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/blaschke.hpp"
#include "hardy/errors.hpp"
#include "hardy/factorization.hpp"
#include "hardy/kernels.hpp"
#include "hardy/lapack.hpp"
#include "hardy/linalg.hpp"
#include "hardy/model_space.hpp"
#include "hardy/polydisc.hpp"

using hardy::CMatrix;
using hardy::cplx;
using hardy::RunConfig;
using hardy::blaschke::BlaschkeProduct;
using hardy::blaschke::zero_matching_distance;
using hardy::kernels::matmul;
namespace factorization = hardy::factorization;
namespace lapack = hardy::lapack;
namespace linalg = hardy::linalg;
namespace model_space = hardy::model_space;
namespace polydisc = hardy::polydisc;

namespace {

std::mt19937_64 gen(23);

// Common truncation high enough to guard every factor in the tuple.
std::size_t common_guard(const std::vector<BlaschkeProduct>& thetas, std::size_t requested) {
    std::size_t g = requested;
    for (const auto& th : thetas)
        if (!th.is_zero_function()) g = std::max(g, model_space::guard_truncation(th, requested));
    return g;
}

polydisc::QuotientModule build(const std::vector<BlaschkeProduct>& thetas,
                               std::size_t requested = 8) {
    const std::size_t g = common_guard(thetas, requested);
    std::vector<model_space::ModelSpace> factors;
    for (const auto& th : thetas)
        factors.push_back(th.is_zero_function() ? model_space::full_space(g)
                                                : model_space::build_model_space(th, g));
    return polydisc::tensor_quotient(factors);
}

CMatrix random_unitary(std::size_t d) {
    std::normal_distribution<double> nd;
    CMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = cplx(nd(gen), nd(gen));
    return lapack::qr_orth(m);
}

void check_roundtrip(const std::vector<BlaschkeProduct>& thetas) {
    const auto q = build(thetas);
    const auto f = factorization::factorize(q);
    REQUIRE(f.thetas.size() == thetas.size());
    CHECK(f.residual < 1e-9);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        CHECK(f.thetas[i].is_zero_function() == thetas[i].is_zero_function());
        if (!thetas[i].is_zero_function())
            CHECK(zero_matching_distance(f.thetas[i].zeros(), thetas[i].zeros()) < 1e-8);
    }
}

}  // namespace

TEST_CASE("extract_factor recovers each tensor slot near machine precision") {
    const BlaschkeProduct t1({cplx(0.4, 0.1), cplx(-0.2, 0.0)});
    const BlaschkeProduct t2({cplx(0.0, 0.35)});
    const auto q = build({t1, t2});
    for (std::size_t var = 1; var <= 2; ++var) {
        const auto f = factorization::extract_factor(q, var);
        CHECK(f.space.dim == (var == 1 ? 2 : 1));
        CHECK(!f.starvation_suspect);
        const auto ref = model_space::build_model_space(var == 1 ? t1 : t2,
                                                        q.trunc.per_var_degree);
        CHECK(linalg::projection_distance(f.space.basis_taylor, ref.basis_taylor) < 1e-11);
    }
}

TEST_CASE("factorize round-trips proper x proper tuples") {
    check_roundtrip({BlaschkeProduct({cplx(0.5, 0.0), cplx(0.1, -0.3)}),
                     BlaschkeProduct({cplx(-0.4, 0.2)})});
}

TEST_CASE("factorize round-trips tuples with FULL slots") {
    check_roundtrip({BlaschkeProduct::zero_function(),
                     BlaschkeProduct({cplx(0.3, 0.3)})});
    check_roundtrip({BlaschkeProduct({cplx(0.2, 0.0), cplx(0.0, 0.25), cplx(-0.3, 0.1)}),
                     BlaschkeProduct::zero_function()});
}

TEST_CASE("factorize round-trips an n=3 tuple") {
    check_roundtrip({BlaschkeProduct({cplx(0.15, 0.0)}),
                     BlaschkeProduct({cplx(0.0, -0.12)}),
                     BlaschkeProduct({cplx(-0.1, 0.1)})});
}

TEST_CASE("raw re-presentation with a scrambled basis factorizes identically") {
    const BlaschkeProduct t1({cplx(0.3, -0.1), cplx(-0.25, 0.0)});
    const BlaschkeProduct t2({cplx(0.2, 0.2)});
    const auto q = build({t1, t2});
    // Same subspace, spanned by randomly recombined (non-orthogonal) columns.
    CMatrix mix = matmul(q.basis, random_unitary(q.dim()));
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    for (std::size_t j = 0; j < mix.cols(); ++j) {
        const double s = scale(gen);
        for (std::size_t i = 0; i < mix.rows(); ++i) mix(i, j) *= s;
    }
    const auto raw = polydisc::raw_quotient(q.trunc, mix);
    CHECK(raw.provenance == polydisc::Provenance::Raw);
    const auto f = factorization::factorize(raw);
    CHECK(f.residual < 1e-9);
    CHECK(zero_matching_distance(f.thetas[0].zeros(), t1.zeros()) < 1e-8);
    CHECK(zero_matching_distance(f.thetas[1].zeros(), t2.zeros()) < 1e-8);
}

TEST_CASE("factorize refuses the non-doubly-commuting raw span") {
    polydisc::PolydiscTruncation t{2, 1};
    CMatrix span(4, 3);
    span(0, 0) = 1.0;                  // 1
    span(2, 1) = span(1, 1) = 1.0;     // z1 + z2
    span(3, 2) = 1.0;                  // z1 z2
    const auto q = polydisc::raw_quotient(t, span);
    CHECK(polydisc::max_doubly_commuting_residual(q) > 1e-2);
    CHECK_THROWS_AS(factorization::factorize(q), hardy::numeric_error);
}

TEST_CASE("starvation retry: zeros at origin at a tight truncation") {
    // degree-2 factor at truncation 2: dim = N, starvation suspect; tensor
    // inputs are rebuilt four degrees higher and classified correctly.
    const BlaschkeProduct t1({cplx(0.0, 0.0), cplx(0.0, 0.0)});
    const BlaschkeProduct t2({cplx(0.0, 0.0)});
    const auto q = polydisc::tensor_quotient({model_space::build_model_space(t1, 2),
                                              model_space::build_model_space(t2, 2)});
    const auto f = factorization::factorize(q);
    REQUIRE(!f.warnings.empty());
    CHECK(f.warnings.front().find("starvation") != std::string::npos);
    CHECK(f.residual < 1e-10);
    CHECK(zero_matching_distance(f.thetas[0].zeros(), t1.zeros()) < 1e-10);
    CHECK(zero_matching_distance(f.thetas[1].zeros(), t2.zeros()) < 1e-10);
}

TEST_CASE("raw starvation is classified as given, with a warning") {
    const auto tensor = polydisc::tensor_quotient(
        {model_space::build_model_space(BlaschkeProduct({cplx(0.0, 0.0)}), 1),
         model_space::full_space(1)});
    const auto raw = polydisc::raw_quotient(tensor.trunc, tensor.basis);
    const auto f = factorization::factorize(raw);
    REQUIRE(!f.warnings.empty());
    CHECK(f.warnings.front().find("starved") != std::string::npos);
    CHECK(f.residual < 1e-10);
}

TEST_CASE("reembed zero-pads raw bases into the larger truncation") {
    polydisc::PolydiscTruncation t{2, 1};
    CMatrix span(4, 2);
    span(0, 0) = 1.0;               // 1
    span(1, 1) = span(2, 1) = 1.0;  // z1 + z2
    const auto q = polydisc::raw_quotient(t, span);
    const auto big = factorization::reembed(q, 3);
    CHECK(big.trunc.per_var_degree == 3);
    CHECK(big.dim() == 2);
    // The constant and (z1+z2)/sqrt(2) live at flats 0, stride(1), stride(2).
    const auto& bt = big.trunc;
    CMatrix expect(bt.total_dim(), 2);
    expect(0, 0) = 1.0;
    expect(bt.stride(1), 1) = expect(bt.stride(2), 1) = 1.0 / std::sqrt(2.0);
    CHECK(linalg::projection_distance(big.basis, expect) < 1e-12);
}

TEST_CASE("jordan_block flag: proper factor present vs full space") {
    const auto full = polydisc::tensor_quotient(
        {model_space::full_space(4), model_space::full_space(4)});
    const auto ff = factorization::factorize(full);
    CHECK(!ff.jordan_block);
    const auto q = build({BlaschkeProduct({cplx(0.3, 0.0)}), BlaschkeProduct::zero_function()});
    CHECK(factorization::factorize(q).jordan_block);
}
