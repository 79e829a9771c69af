#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hardy/kernels.hpp"
#include "hardy/linalg.hpp"

using hardy::CMatrix;
using hardy::cplx;
namespace kernels = hardy::kernels;

namespace {

std::mt19937_64 gen(42);

CMatrix random_matrix(std::size_t r, std::size_t c) {
    std::normal_distribution<double> n;
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(n(gen), n(gen));
    return m;
}

// Entries k/64 are exactly representable, so products of up to three of them
// incur no rounding and kernel comparisons can demand bitwise equality.
CMatrix dyadic_matrix(std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> d(-64, 64);
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(d(gen) / 64.0, d(gen) / 64.0);
    return m;
}

CMatrix naive_matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

}  // namespace

TEST_CASE("matmul agrees with the naive triple loop") {
    for (auto [r, k, c] : {std::array<std::size_t, 3>{1, 1, 1},
                           {5, 7, 3},
                           {64, 64, 64},
                           {65, 63, 66},
                           {130, 17, 129}}) {
        const CMatrix a = random_matrix(r, k), b = random_matrix(k, c);
        const CMatrix fast = kernels::matmul(a, b), slow = naive_matmul(a, b);
        CHECK((fast - slow).max_abs() < 1e-12 * double(k));
    }
}

TEST_CASE("serial and parallel matmul are bit-identical") {
    for (auto [r, k, c] : {std::array<std::size_t, 3>{3, 4, 5},
                           {64, 64, 64},
                           {100, 130, 70},
                           {129, 65, 127}}) {
        const CMatrix a = random_matrix(r, k), b = random_matrix(k, c);
        const CMatrix s = kernels::matmul_serial(a, b), p = kernels::matmul_omp(a, b);
        CHECK(s.max_abs() > 0.0);
        CHECK((s - p).max_abs() == 0.0);
    }
}

TEST_CASE("matmul with identity and zero") {
    const CMatrix a = random_matrix(9, 9);
    CHECK((kernels::matmul(a, CMatrix::identity(9)) - a).max_abs() == 0.0);
    CHECK((kernels::matmul(CMatrix::identity(9), a) - a).max_abs() == 0.0);
    CHECK(kernels::matmul(a, CMatrix(9, 9)).max_abs() == 0.0);
}

TEST_CASE("kron layout on a 2x2 example") {
    CMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 3.0;
    a(1, 1) = 4.0;
    b(0, 0) = cplx(0.0, 1.0);
    b(1, 1) = 5.0;
    const CMatrix k = kernels::kron(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    CHECK(k(0, 0) == cplx(0.0, 1.0));
    CHECK(k(1, 1) == cplx(5.0, 0.0));
    CHECK(k(0, 2) == cplx(0.0, 2.0));
    CHECK(k(3, 3) == cplx(20.0, 0.0));
    CHECK(k(2, 0) == cplx(0.0, 3.0));
    CHECK(k(1, 0) == cplx(0.0, 0.0));
}

TEST_CASE("serial and parallel kron are bit-identical") {
    const CMatrix a = random_matrix(13, 7), b = random_matrix(5, 11);
    CHECK((kernels::kron_serial(a, b) - kernels::kron_omp(a, b)).max_abs() == 0.0);
}

TEST_CASE("kron is associative, bitwise, on dyadic entries") {
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix a = dyadic_matrix(3, 4), b = dyadic_matrix(2, 5), c = dyadic_matrix(4, 2);
        const CMatrix lhs = kernels::kron(kernels::kron(a, b), c);
        const CMatrix rhs = kernels::kron(a, kernels::kron(b, c));
        CHECK((lhs - rhs).max_abs() == 0.0);
    }
}

TEST_CASE("kron mixed-product identity") {
    const CMatrix a = random_matrix(4, 3), b = random_matrix(3, 5);
    const CMatrix c = random_matrix(2, 6), d = random_matrix(6, 2);
    const CMatrix lhs = kernels::matmul(kernels::kron(a, c), kernels::kron(b, d));
    const CMatrix rhs = kernels::kron(kernels::matmul(a, b), kernels::matmul(c, d));
    CHECK((lhs - rhs).max_abs() < 1e-12);
}
