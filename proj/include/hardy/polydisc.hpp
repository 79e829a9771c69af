#pragma once

#include <optional>
#include <vector>

#include "hardy/cmatrix.hpp"
#include "hardy/config.hpp"
#include "hardy/linalg.hpp"
#include "hardy/model_space.hpp"

namespace hardy::polydisc {

using model_space::ModelSpace;

/// Truncated H^2(D^n): per-variable Taylor degrees 0..N, multi-indices
/// ordered lexicographically with variable 1 slowest (matching kron with the
/// variable-1 factor leftmost).
struct PolydiscTruncation {
    std::size_t n = 1;
    std::size_t per_var_degree = 1;  // N

    std::size_t total_dim() const;
    std::size_t stride(std::size_t var) const;  // flat-index stride of variable var (1-based)
    std::size_t digit(std::size_t flat, std::size_t var) const;

    void check_limit(std::size_t max_dim = default_max_dimension()) const;
    bool operator==(const PolydiscTruncation&) const = default;
};

/// M_{z_i} applied to columns of x (sparse digit shift, top degree dropped).
CMatrix apply_shift(const PolydiscTruncation& t, std::size_t var, const CMatrix& x);
CMatrix apply_shift_adjoint(const PolydiscTruncation& t, std::size_t var, const CMatrix& x);

/// Dense ambient shift matrix: kron of identities with the one-variable
/// truncated shift in slot var.
CMatrix shift_matrix(const PolydiscTruncation& t, std::size_t var,
                     std::size_t max_dim = default_max_dimension());

enum class Provenance { TensorBuilt, Raw };

/// Quotient module of the truncated space, held as an orthonormal basis of
/// the subspace plus the compressed module operators.
struct QuotientModule {
    PolydiscTruncation trunc;
    CMatrix basis;                       // total_dim x q, orthonormal columns
    std::vector<CMatrix> compressed_ops; // n matrices, q x q
    Provenance provenance = Provenance::Raw;
    std::vector<ModelSpace> factors;     // tensor-built only

    std::size_t dim() const { return basis.cols(); }
    bool is_full() const { return dim() == trunc.total_dim(); }
    /// Dense projection basis * basis^*; guarded by the dimension limit.
    linalg::ProjectionMatrix projection(double tol = 1e-10) const;
};

/// Q = Q_1 (x) ... (x) Q_n with kron'd bases and slot-wise compressed shifts.
QuotientModule tensor_quotient(const std::vector<ModelSpace>& factors,
                               std::size_t max_dim = default_max_dimension());

/// Orthonormalizes a raw polynomial spanning set and verifies co-invariance
/// under every M_{z_i}^* (hard input error on failure).
QuotientModule raw_quotient(const PolydiscTruncation& t, const CMatrix& spanning,
                            double tol_rank = 1e-10, double tol_coinv = 1e-8);

/// n x n symmetric matrix of operator norms ||C_i C_j* - C_j* C_i||.
std::vector<std::vector<double>> doubly_commuting_residual(const QuotientModule& q);
double max_doubly_commuting_residual(const QuotientModule& q);

/// prod_{i != excluded} (I - M_i M_i*), evaluated both by the
/// inclusion-exclusion expansion and as the Kronecker product of the
/// identity (slot `excluded`) with rank-one constant projections; the two
/// routes must agree to 1e-12.
CMatrix hereditary_defect(const PolydiscTruncation& t, std::size_t excluded,
                          std::size_t max_dim = default_max_dimension(),
                          double* route_deviation = nullptr);

struct ReducingTestResult {
    bool is_reducing = false;
    double commutation_residual = 0.0;
    double reconstruction_residual = 0.0;
    std::optional<CMatrix> factor;  // one-variable projection matrix (N+1)^2
};

/// Is ran(p) of the form S_1 (x) H^2 (x) ... (x) H^2 (reducing for
/// M_{z_2}, ..., M_{z_n})? On success extracts the one-variable factor.
ReducingTestResult reducing_subspace_test(const linalg::ProjectionMatrix& p,
                                          const PolydiscTruncation& t, double tol = 1e-9);

}  // namespace hardy::polydisc
