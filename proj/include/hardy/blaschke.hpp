#pragma once

#include <vector>

#include "hardy/cmatrix.hpp"

namespace hardy::blaschke {

/// Finite Blaschke product c * prod (z - a_k) / (1 - conj(a_k) z), or the
/// distinguished zero function.
class BlaschkeProduct {
  public:
    /// Throws input_error when a zero is within 1e-8 of the unit circle or
    /// the constant is not unimodular to 1e-12.
    explicit BlaschkeProduct(std::vector<cplx> zeros, cplx constant = cplx(1.0, 0.0));

    static BlaschkeProduct zero_function();

    bool is_zero_function() const { return is_zero_; }
    std::size_t degree() const { return zeros_.size(); }
    const std::vector<cplx>& zeros() const { return zeros_; }
    cplx constant() const { return constant_; }

    /// max |a_k| (0 for the zero function or constant products).
    double max_zero_modulus() const;

  private:
    BlaschkeProduct() : is_zero_(true), constant_(0.0) {}

    std::vector<cplx> zeros_;
    cplx constant_;
    bool is_zero_ = false;
};

cplx eval(const BlaschkeProduct& theta, cplx z);

/// Theta(0) = c * prod(-a_k).
cplx value_at_origin(const BlaschkeProduct& theta);

/// Maclaurin coefficients through z^degree, by exact factor-series
/// convolution: (z - a) / (1 - conj(a) z) has c_0 = -a and
/// c_m = conj(a)^{m-1} (1 - |a|^2) for m >= 1.
std::vector<cplx> taylor_coefficients(const BlaschkeProduct& theta, std::size_t degree);

/// Lower-triangular Toeplitz matrix of multiplication by Theta on Taylor
/// degrees <= trunc.
CMatrix multiplier_matrix(const BlaschkeProduct& theta, std::size_t trunc);

/// Product of two Blaschke products (zero function absorbs).
BlaschkeProduct multiply(const BlaschkeProduct& a, const BlaschkeProduct& b);

/// Optimal-matching distance between two zero multisets: min over pairings of
/// the max pointwise distance. Infinity when the sizes differ.
double zero_matching_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace hardy::blaschke
