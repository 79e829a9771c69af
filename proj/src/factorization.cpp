#include "hardy/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy::factorization {

using kernels::matmul;
using model_space::ModelSpace;
using polydisc::apply_shift;
using polydisc::apply_shift_adjoint;
using polydisc::Provenance;

ExtractedFactor extract_factor(const QuotientModule& q, std::size_t var, double tol_rank) {
    const auto& t = q.trunc;
    if (var < 1 || var > t.n) throw input_error("extract_factor: variable index out of range");
    const std::size_t radix = t.per_var_degree + 1;
    ExtractedFactor out;

    CMatrix w;  // (N+1) x k, basis of the one-variable factor in Taylor coords
    if (t.n == 1) {
        w = q.basis;
    } else {
        // prod_{j != var} (I - C_j C_j^*) on Q. Each factor has rank-one
        // defect with a wandering vector of nonzero constant coefficient, so
        // the product projects onto Q_var (x) span(w_2) (x) ... (x) span(w_n).
        const std::size_t qd = q.dim();
        CMatrix d = CMatrix::identity(qd);
        for (std::size_t j = 1; j <= t.n; ++j) {
            if (j == var) continue;
            const CMatrix& c = q.compressed_ops[j - 1];
            d = matmul(d, CMatrix::identity(qd) - matmul(c, c.adjoint()));
        }
        const CMatrix vecs = linalg::range_basis(matmul(q.basis, d), tol_rank);
        // Every column is q (x) w with w fixed; the rows where all other
        // digits vanish carry q scaled by the constant coefficient of w.
        std::vector<std::size_t> rows;
        for (std::size_t k = 0; k < radix; ++k) rows.push_back(k * t.stride(var));
        std::vector<std::size_t> cols(vecs.cols());
        for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
        w = linalg::range_basis(vecs.submatrix(rows, cols), tol_rank);
    }

    ModelSpace ms;
    ms.trunc = t.per_var_degree;
    ms.dim = w.cols();
    ms.basis_taylor = w;
    ms.shift = matmul(w.adjoint(), matmul(model_space::lower_shift(t.per_var_degree), w));
    ms.is_full = ms.dim == radix;
    out.space = std::move(ms);
    out.starvation_suspect = out.space.dim + 1 >= radix && !out.space.is_full;
    // A full factor is also ambiguous: a degree-(N+1) Blaschke factor looks
    // identical to the full space at truncation N.
    if (out.space.is_full) out.starvation_suspect = true;
    return out;
}

QuotientModule reembed(const QuotientModule& q, std::size_t new_degree) {
    const auto& t = q.trunc;
    if (new_degree <= t.per_var_degree) return q;
    if (q.provenance == Provenance::TensorBuilt) {
        std::vector<ModelSpace> factors;
        for (const auto& f : q.factors)
            factors.push_back(f.is_full ? model_space::full_space(new_degree)
                                        : model_space::build_model_space(f.theta, new_degree));
        return polydisc::tensor_quotient(factors);
    }
    // Raw: zero-pad the polynomial basis into the larger truncation.
    polydisc::PolydiscTruncation bigger{t.n, new_degree};
    bigger.check_limit();
    CMatrix padded(bigger.total_dim(), q.basis.cols());
    for (std::size_t f = 0; f < t.total_dim(); ++f) {
        std::size_t g = 0;
        for (std::size_t v = 1; v <= t.n; ++v) g += t.digit(f, v) * bigger.stride(v);
        for (std::size_t j = 0; j < q.basis.cols(); ++j) padded(g, j) = q.basis(f, j);
    }
    return polydisc::raw_quotient(bigger, padded);
}

namespace {

Factorization run_factorization(const QuotientModule& q, const RunConfig& cfg,
                                bool allow_retry) {
    Factorization out;
    out.dc_residual = polydisc::max_doubly_commuting_residual(q);
    if (out.dc_residual > cfg.tol_dc)
        throw numeric_error("factorize: module is not doubly commuting (residual " +
                            std::to_string(out.dc_residual) + ")");

    bool starved = false;
    for (std::size_t var = 1; var <= q.trunc.n; ++var) {
        auto f = extract_factor(q, var, cfg.tol_rank);
        starved = starved || f.starvation_suspect;
        out.factors.push_back(std::move(f.space));
    }

    // Starvation policy: a factor of dimension N or N+1 cannot be classified
    // at truncation N. Tensor-built inputs can be rebuilt faithfully four
    // degrees higher; for raw inputs the truncation is the space, so they are
    // classified as given, with a warning.
    if (starved && allow_retry && q.provenance == Provenance::TensorBuilt) {
        const std::size_t retry_n = q.trunc.per_var_degree + 4;
        polydisc::PolydiscTruncation bigger{q.trunc.n, retry_n};
        bool can_retry = true;
        try {
            bigger.check_limit(cfg.max_dimension);
        } catch (const dimension_limit_error&) {
            can_retry = false;
        }
        if (can_retry) {
            Factorization retry = run_factorization(reembed(q, retry_n), cfg, false);
            retry.warnings.insert(retry.warnings.begin(),
                                  "truncation starvation suspected; re-ran at degree " +
                                      std::to_string(retry_n));
            return retry;
        }
        out.warnings.push_back("truncation starvation suspected; dimension limit blocked retry");
    } else if (starved) {
        out.warnings.push_back(
            "factor dimension within one of the truncation; classification may be starved");
    }

    bool any_proper = false;
    for (const auto& f : out.factors) {
        if (f.is_full) {
            out.thetas.push_back(blaschke::BlaschkeProduct::zero_function());
        } else {
            out.thetas.push_back(model_space::recover_inner_from_shift(f.shift));
            any_proper = true;
        }
    }
    out.jordan_block = any_proper;

    CMatrix tensor_basis = out.factors.front().basis_taylor;
    for (std::size_t i = 1; i < out.factors.size(); ++i)
        tensor_basis = linalg::kron(tensor_basis, out.factors[i].basis_taylor,
                                    cfg.max_dimension * cfg.max_dimension);
    out.residual = linalg::projection_distance(q.basis, tensor_basis);
    return out;
}

}  // namespace

Factorization factorize(const QuotientModule& q, const RunConfig& cfg) {
    Factorization out = run_factorization(q, cfg, true);
    if (out.residual > cfg.tol_fact) {
        // Distinguish truncation starvation from genuine failure by re-running
        // two degrees higher.
        try {
            const Factorization retry =
                run_factorization(reembed(q, q.trunc.per_var_degree + 2), cfg, false);
            if (retry.residual <= cfg.tol_fact)
                throw numeric_error(
                    "factorize: residual above tolerance at this truncation but clean two "
                    "degrees higher; truncation starvation, raise the truncation");
        } catch (const dimension_limit_error&) {
        } catch (const input_error&) {
        }
        throw numeric_error("factorize: tensor residual " + std::to_string(out.residual) +
                            " above tolerance (classification failure)");
    }
    return out;
}

}  // namespace hardy::factorization
