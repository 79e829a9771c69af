#include "hardy/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hardy/errors.hpp"

namespace hardy::blaschke {

namespace {
constexpr double kBoundaryMargin = 1e-8;
constexpr double kUnimodularTol = 1e-12;
}  // namespace

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, cplx constant)
    : zeros_(std::move(zeros)), constant_(constant) {
    for (const auto& a : zeros_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw input_error("Blaschke zero is not finite");
        if (std::abs(a) > 1.0 - kBoundaryMargin)
            throw input_error("Blaschke zero too close to the unit circle");
    }
    if (std::abs(std::abs(constant_) - 1.0) > kUnimodularTol)
        throw input_error("Blaschke constant is not unimodular");
}

BlaschkeProduct BlaschkeProduct::zero_function() { return BlaschkeProduct(); }

double BlaschkeProduct::max_zero_modulus() const {
    double r = 0.0;
    for (const auto& a : zeros_) r = std::max(r, std::abs(a));
    return r;
}

cplx eval(const BlaschkeProduct& theta, cplx z) {
    if (theta.is_zero_function()) return cplx(0.0, 0.0);
    cplx v = theta.constant();
    for (const auto& a : theta.zeros()) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

cplx value_at_origin(const BlaschkeProduct& theta) {
    if (theta.is_zero_function()) return cplx(0.0, 0.0);
    cplx v = theta.constant();
    for (const auto& a : theta.zeros()) v *= -a;
    return v;
}

std::vector<cplx> taylor_coefficients(const BlaschkeProduct& theta, std::size_t degree) {
    std::vector<cplx> out(degree + 1, cplx(0.0, 0.0));
    if (theta.is_zero_function()) return out;
    out[0] = theta.constant();
    std::vector<cplx> factor(degree + 1), next(degree + 1);
    for (const auto& a : theta.zeros()) {
        const cplx ac = std::conj(a);
        const double w = 1.0 - std::norm(a);
        factor[0] = -a;
        cplx p = cplx(1.0, 0.0);
        for (std::size_t m = 1; m <= degree; ++m) {
            factor[m] = p * w;  // conj(a)^{m-1} (1 - |a|^2)
            p *= ac;
        }
        std::fill(next.begin(), next.end(), cplx(0.0, 0.0));
        for (std::size_t k = 0; k <= degree; ++k) {
            if (out[k] == cplx(0.0, 0.0)) continue;
            for (std::size_t m = 0; m + k <= degree; ++m) next[k + m] += out[k] * factor[m];
        }
        out.swap(next);
    }
    return out;
}

CMatrix multiplier_matrix(const BlaschkeProduct& theta, std::size_t trunc) {
    const auto c = taylor_coefficients(theta, trunc);
    CMatrix m(trunc + 1, trunc + 1);
    for (std::size_t i = 0; i <= trunc; ++i)
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = c[i - j];
    return m;
}

BlaschkeProduct multiply(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    if (a.is_zero_function() || b.is_zero_function()) return BlaschkeProduct::zero_function();
    std::vector<cplx> zeros = a.zeros();
    zeros.insert(zeros.end(), b.zeros().begin(), b.zeros().end());
    return BlaschkeProduct(std::move(zeros), a.constant() * b.constant());
}

double zero_matching_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), std::size_t(0));
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (a.empty()) return 0.0;
    return best;
}

}  // namespace hardy::blaschke
