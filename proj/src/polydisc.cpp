#include "hardy/polydisc.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy::polydisc {

using kernels::matmul;
using model_space::lower_shift;

std::size_t PolydiscTruncation::total_dim() const {
    std::size_t d = 1;
    for (std::size_t i = 0; i < n; ++i) d *= per_var_degree + 1;
    return d;
}

std::size_t PolydiscTruncation::stride(std::size_t var) const {
    assert(var >= 1 && var <= n);
    std::size_t s = 1;
    for (std::size_t i = var; i < n; ++i) s *= per_var_degree + 1;
    return s;
}

std::size_t PolydiscTruncation::digit(std::size_t flat, std::size_t var) const {
    return (flat / stride(var)) % (per_var_degree + 1);
}

void PolydiscTruncation::check_limit(std::size_t max_dim) const {
    if (n < 1) throw input_error("at least one variable required");
    // Overflow-safe: multiply up and bail early.
    std::size_t d = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (d > max_dim / (per_var_degree + 1) + 1) d = max_dim + 1;
        else d *= per_var_degree + 1;
        if (d > max_dim)
            throw dimension_limit_error("polydisc truncation exceeds dimension limit");
    }
}

CMatrix apply_shift(const PolydiscTruncation& t, std::size_t var, const CMatrix& x) {
    const std::size_t st = t.stride(var), radix = t.per_var_degree + 1;
    CMatrix y(x.rows(), x.cols());
    for (std::size_t f = 0; f < x.rows(); ++f) {
        const std::size_t k = (f / st) % radix;
        if (k + 1 >= radix) continue;
        for (std::size_t j = 0; j < x.cols(); ++j) y(f + st, j) = x(f, j);
    }
    return y;
}

CMatrix apply_shift_adjoint(const PolydiscTruncation& t, std::size_t var, const CMatrix& x) {
    const std::size_t st = t.stride(var), radix = t.per_var_degree + 1;
    CMatrix y(x.rows(), x.cols());
    for (std::size_t f = 0; f < x.rows(); ++f) {
        const std::size_t k = (f / st) % radix;
        if (k == 0) continue;
        for (std::size_t j = 0; j < x.cols(); ++j) y(f - st, j) = x(f, j);
    }
    return y;
}

CMatrix shift_matrix(const PolydiscTruncation& t, std::size_t var, std::size_t max_dim) {
    if (var < 1 || var > t.n) throw input_error("variable index out of range");
    t.check_limit(max_dim);
    CMatrix m = var == 1 ? lower_shift(t.per_var_degree) : CMatrix::identity(t.per_var_degree + 1);
    for (std::size_t i = 2; i <= t.n; ++i) {
        const CMatrix next =
            i == var ? lower_shift(t.per_var_degree) : CMatrix::identity(t.per_var_degree + 1);
        m = linalg::kron(m, next, max_dim);
    }
    return m;
}

linalg::ProjectionMatrix QuotientModule::projection(double tol) const {
    const std::size_t d = trunc.total_dim();
    if (d * d > default_max_dimension() * default_max_dimension())
        throw dimension_limit_error("dense projection too large");
    CMatrix p = dim() > 0 ? matmul(basis, basis.adjoint()) : CMatrix(d, d);
    return linalg::ProjectionMatrix::certify(std::move(p), tol);
}

QuotientModule tensor_quotient(const std::vector<ModelSpace>& factors, std::size_t max_dim) {
    if (factors.empty()) throw input_error("tensor_quotient: at least one factor");
    const std::size_t trunc0 = factors.front().trunc;
    for (const auto& f : factors)
        if (f.trunc != trunc0)
            throw input_error("tensor_quotient: factors must share one truncation");

    QuotientModule q;
    q.trunc = PolydiscTruncation{factors.size(), trunc0};
    q.trunc.check_limit(max_dim);
    q.provenance = Provenance::TensorBuilt;
    q.factors = factors;

    CMatrix basis = factors.front().basis_taylor;
    for (std::size_t i = 1; i < factors.size(); ++i)
        basis = linalg::kron(basis, factors[i].basis_taylor, max_dim * max_dim);
    q.basis = std::move(basis);

    for (std::size_t i = 0; i < factors.size(); ++i) {
        CMatrix op = i == 0 ? factors[0].shift : CMatrix::identity(factors[0].dim);
        for (std::size_t j = 1; j < factors.size(); ++j) {
            const CMatrix next = j == i ? factors[j].shift : CMatrix::identity(factors[j].dim);
            op = linalg::kron(op, next, max_dim);
        }
        q.compressed_ops.push_back(std::move(op));
    }
    return q;
}

QuotientModule raw_quotient(const PolydiscTruncation& t, const CMatrix& spanning,
                            double tol_rank, double tol_coinv) {
    t.check_limit();
    if (spanning.rows() != t.total_dim())
        throw input_error("raw_quotient: spanning vectors have wrong length");
    if (spanning.cols() == 0) throw input_error("raw_quotient: empty spanning set");

    QuotientModule q;
    q.trunc = t;
    q.provenance = Provenance::Raw;
    q.basis = linalg::range_basis(spanning, tol_rank);

    // Co-invariance: (I - P) M_i^* maps Q to zero. Asserted on the safe
    // sub-block (all digits <= N-1), where the truncated shifts agree with
    // the untruncated ones; top-degree rows are truncation artifacts.
    std::vector<bool> safe(t.total_dim(), true);
    for (std::size_t flat = 0; flat < t.total_dim(); ++flat)
        for (std::size_t v = 1; v <= t.n; ++v)
            if (t.digit(flat, v) + 1 > t.per_var_degree) safe[flat] = false;
    for (std::size_t i = 1; i <= t.n; ++i) {
        const CMatrix y = apply_shift_adjoint(t, i, q.basis);
        CMatrix resid = y - matmul(q.basis, matmul(q.basis.adjoint(), y));
        for (std::size_t r = 0; r < resid.rows(); ++r)
            if (!safe[r])
                for (std::size_t c = 0; c < resid.cols(); ++c) resid(r, c) = 0.0;
        if (lapack::operator_norm(resid) > tol_coinv)
            throw input_error("raw_quotient: spanning set is not co-invariant (not a quotient module)");
    }
    for (std::size_t i = 1; i <= t.n; ++i)
        q.compressed_ops.push_back(matmul(q.basis.adjoint(), apply_shift(t, i, q.basis)));
    return q;
}

std::vector<std::vector<double>> doubly_commuting_residual(const QuotientModule& q) {
    const std::size_t n = q.trunc.n;
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v =
                linalg::commutator_norm(q.compressed_ops[i], q.compressed_ops[j]).second;
            r[i][j] = r[j][i] = v;
        }
    return r;
}

double max_doubly_commuting_residual(const QuotientModule& q) {
    double m = 0.0;
    for (const auto& row : doubly_commuting_residual(q))
        for (double v : row) m = std::max(m, v);
    return m;
}

CMatrix hereditary_defect(const PolydiscTruncation& t, std::size_t excluded,
                          std::size_t max_dim, double* route_deviation) {
    if (t.n < 2) throw input_error("hereditary_defect: at least two variables required");
    if (excluded < 1 || excluded > t.n) throw input_error("variable index out of range");
    t.check_limit(max_dim);
    const std::size_t d = t.total_dim();

    // Route 1: inclusion-exclusion over subsets of the non-excluded variables.
    std::vector<std::size_t> vars;
    for (std::size_t i = 1; i <= t.n; ++i)
        if (i != excluded) vars.push_back(i);
    CMatrix sum(d, d);
    const std::size_t nsub = std::size_t(1) << vars.size();
    for (std::size_t mask = 0; mask < nsub; ++mask) {
        CMatrix term = CMatrix::identity(d);
        int par = 0;
        for (std::size_t b = 0; b < vars.size(); ++b)
            if (mask & (std::size_t(1) << b)) {
                term = apply_shift(t, vars[b], term);
                ++par;
            }
        // term = M_T; add (-1)^|T| M_T M_T^*
        CMatrix mm = matmul(term, term.adjoint());
        if (par % 2) sum -= mm;
        else sum += mm;
    }

    // Route 2: identity in the excluded slot, rank-one constant projection
    // elsewhere.
    const std::size_t radix = t.per_var_degree + 1;
    CMatrix e00(radix, radix);
    e00(0, 0) = 1.0;
    CMatrix prod = excluded == 1 ? CMatrix::identity(radix) : e00;
    for (std::size_t i = 2; i <= t.n; ++i)
        prod = linalg::kron(prod, i == excluded ? CMatrix::identity(radix) : e00, max_dim);

    const double dev = (sum - prod).max_abs();
    if (route_deviation) *route_deviation = dev;
    if (dev > 1e-12)
        throw numeric_error("hereditary_defect: inclusion-exclusion and product routes disagree");
    return prod;
}

ReducingTestResult reducing_subspace_test(const linalg::ProjectionMatrix& p,
                                          const PolydiscTruncation& t, double tol) {
    if (t.n < 2) throw input_error("reducing_subspace_test: at least two variables required");
    if (p.m.rows() != t.total_dim())
        throw input_error("reducing_subspace_test: projection has wrong dimension");
    ReducingTestResult out;
    const std::size_t radix = t.per_var_degree + 1;

    // Columns with digit k_i <= N-1 keep M_{z_i} exact under truncation.
    for (std::size_t i = 2; i <= t.n; ++i) {
        const CMatrix mp = apply_shift(t, i, p.m);
        const CMatrix pm = matmul(p.m, shift_matrix(t, i));
        std::vector<std::size_t> cols;
        for (std::size_t f = 0; f < t.total_dim(); ++f)
            if (t.digit(f, i) + 1 < radix) cols.push_back(f);
        std::vector<std::size_t> rows(t.total_dim());
        for (std::size_t f = 0; f < rows.size(); ++f) rows[f] = f;
        const double resid = lapack::operator_norm((mp - pm).submatrix(rows, cols));
        out.commutation_residual = std::max(out.commutation_residual, resid);
    }
    if (out.commutation_residual > tol) return out;

    // The proof's device: P * hereditary_defect projects onto S_1 (x) C ... C.
    const CMatrix defect = hereditary_defect(t, 1);
    const CMatrix s1_tilde = matmul(p.m, defect);
    const CMatrix basis = linalg::range_basis(s1_tilde, 1e-10);
    std::vector<std::size_t> one_var_rows;
    for (std::size_t k = 0; k < radix; ++k) one_var_rows.push_back(k * t.stride(1));
    std::vector<std::size_t> all_cols(basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) all_cols[j] = j;
    const CMatrix w = lapack::qr_orth(basis.submatrix(one_var_rows, all_cols));
    CMatrix factor = w.cols() > 0 ? matmul(w, w.adjoint()) : CMatrix(radix, radix);

    CMatrix rebuilt = factor;
    for (std::size_t i = 2; i <= t.n; ++i)
        rebuilt = linalg::kron(rebuilt, CMatrix::identity(radix));
    out.reconstruction_residual = lapack::operator_norm(rebuilt - p.m);
    if (out.reconstruction_residual <= tol) {
        out.is_reducing = true;
        out.factor = std::move(factor);
    }
    return out;
}

}  // namespace hardy::polydisc
