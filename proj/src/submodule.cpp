#include "hardy/submodule.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy::submodule {

using kernels::matmul;
using model_space::ModelSpace;

ProjectionSumDiagnostics commuting_projection_sum_diag(const std::vector<ProjectionMatrix>& ps,
                                                       double tol_comm) {
    if (ps.empty()) throw input_error("commuting_projection_sum: empty family");
    const std::size_t d = ps.front().dim();
    for (const auto& p : ps)
        if (p.dim() != d) throw input_error("commuting_projection_sum: dimension mismatch");
    ProjectionSumDiagnostics out;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const CMatrix c = matmul(ps[i].m, ps[j].m) - matmul(ps[j].m, ps[i].m);
            out.max_commutator = std::max(out.max_commutator, lapack::operator_norm(c));
        }
    if (out.max_commutator > tol_comm)
        throw input_error("commuting_projection_sum: projections do not commute");

    const std::size_t n = ps.size();
    const CMatrix id = CMatrix::identity(d);

    // Forward: P_1 (I-P_2)...(I-P_n) + P_2 (I-P_3)...(I-P_n) + ... + P_n.
    CMatrix forward(d, d);
    {
        CMatrix tail = id;  // prod_{j > i} (I - P_j), built from the right
        for (std::size_t i = n; i-- > 0;) {
            forward += matmul(ps[i].m, tail);
            tail = matmul(id - ps[i].m, tail);
        }
    }
    // Reverse: P_n (I-P_{n-1})...(I-P_1) + ... + P_2 (I-P_1) + P_1.
    CMatrix reverse(d, d);
    {
        CMatrix head = id;  // prod_{j < i} (I - P_j)
        for (std::size_t i = 0; i < n; ++i) {
            reverse += matmul(ps[i].m, head);
            head = matmul(id - ps[i].m, head);
        }
    }
    // Product: I - prod (I - P_i).
    CMatrix prod = id;
    for (const auto& p : ps) prod = matmul(prod, id - p.m);
    const CMatrix product_form = id - prod;

    const double d1 = lapack::operator_norm(forward - reverse);
    const double d2 = lapack::operator_norm(forward - product_form);
    const double d3 = lapack::operator_norm(reverse - product_form);
    out.max_formula_disagreement = std::max({d1, d2, d3});
    if (out.max_formula_disagreement > 1e-11)
        throw numeric_error("commuting_projection_sum: telescoping and product formulas disagree");
    out.p = ProjectionMatrix::certify(product_form, 1e-10);
    return out;
}

ProjectionMatrix commuting_projection_sum(const std::vector<ProjectionMatrix>& ps,
                                          double tol_comm) {
    return commuting_projection_sum_diag(ps, tol_comm).p;
}

double multiplier_deviation(const BlaschkeProduct& theta, const CMatrix& b) {
    const CMatrix m = blaschke::multiplier_matrix(theta, b.rows() - 1);
    return lapack::operator_norm(matmul(m.adjoint(), b));
}

CoDoublyCommutingSubmodule build_submodule(
    const std::vector<std::pair<std::size_t, BlaschkeProduct>>& inners,
    const PolydiscTruncation& trunc, const RunConfig& cfg) {
    trunc.check_limit(cfg.max_dimension);
    if (inners.empty())
        throw input_error("build_submodule: at least one inner function required (m >= 1)");
    for (std::size_t j = 0; j < inners.size(); ++j) {
        const auto& [var, theta] = inners[j];
        if (var < 1 || var > trunc.n) throw input_error("build_submodule: variable out of range");
        if (j > 0 && inners[j - 1].first >= var)
            throw input_error("build_submodule: variable indices must be strictly increasing");
        if (theta.is_zero_function())
            throw input_error("build_submodule: zero function contributes nothing to the sum");
        if (theta.degree() == 0)
            throw input_error("build_submodule: constant inner function gives S = H^2, excluded");
    }

    const std::size_t radix = trunc.per_var_degree + 1;
    CoDoublyCommutingSubmodule out;
    out.trunc = trunc;
    out.inners = inners;

    // Per-variable factor model spaces; FULL where no inner function acts.
    std::vector<ModelSpace> factors;
    std::size_t j = 0;
    for (std::size_t var = 1; var <= trunc.n; ++var) {
        if (j < inners.size() && inners[j].first == var) {
            factors.push_back(
                model_space::build_model_space(inners[j].second, trunc.per_var_degree, false));
            ++j;
        } else {
            factors.push_back(model_space::full_space(trunc.per_var_degree));
        }
    }
    out.quotient_factors = factors;

    // P_j = I - (I (x) ... (x) P_{Q_Theta} (x) ... (x) I), from the exact
    // model-space basis (orthonormalized so each P_j is a true projection).
    std::vector<ProjectionMatrix> sub_projs;
    const CMatrix id_amb = CMatrix::identity(trunc.total_dim());
    for (const auto& [var, theta] : inners) {
        const ModelSpace& f = factors[var - 1];
        const CMatrix& b = f.basis_taylor;  // already orthonormal
        const CMatrix pq1 = matmul(b, b.adjoint());
        CMatrix pq = var == 1 ? pq1 : CMatrix::identity(radix);
        for (std::size_t v = 2; v <= trunc.n; ++v)
            pq = linalg::kron(pq, v == var ? pq1 : CMatrix::identity(radix), cfg.max_dimension);
        sub_projs.push_back(ProjectionMatrix::certify(id_amb - pq, 1e-10));
        out.multiplier_truncation_diagnostic =
            std::max(out.multiplier_truncation_diagnostic, multiplier_deviation(theta, b));
    }

    auto sum = commuting_projection_sum_diag(sub_projs, cfg.tol_comm);
    out.lemma_sum_disagreement = sum.max_formula_disagreement;
    out.projection = std::move(sum.p);

    // S^perp basis as the kron of the factor bases.
    CMatrix perp = factors.front().basis_taylor;
    for (std::size_t v = 2; v <= trunc.n; ++v)
        perp = linalg::kron(perp, factors[v - 1].basis_taylor,
                            cfg.max_dimension * cfg.max_dimension);
    out.perp_basis = std::move(perp);
    out.complementarity_residual = lapack::operator_norm(
        out.projection.m + matmul(out.perp_basis, out.perp_basis.adjoint()) - id_amb);
    return out;
}

QuotientModule quotient_of(const CoDoublyCommutingSubmodule& s, const RunConfig& cfg) {
    QuotientModule q = polydisc::tensor_quotient(s.quotient_factors, cfg.max_dimension);
    const double dc = polydisc::max_doubly_commuting_residual(q);
    if (dc > cfg.tol_dc)
        throw numeric_error("quotient_of: doubly-commuting residual above tolerance");
    return q;
}

CoDoublyCommutingSubmodule beurling_roundtrip(const QuotientModule& q, const RunConfig& cfg) {
    if (q.is_full())
        throw input_error("beurling_roundtrip: the full space is not a Jordan block");
    const auto fact = factorization::factorize(q, cfg);
    std::vector<std::pair<std::size_t, BlaschkeProduct>> inners;
    for (std::size_t var = 1; var <= q.trunc.n; ++var)
        if (!fact.factors[var - 1].is_full) inners.emplace_back(var, fact.thetas[var - 1]);
    if (inners.empty())
        throw input_error("beurling_roundtrip: every factor is full; not a Jordan block");
    CoDoublyCommutingSubmodule s = build_submodule(inners, q.trunc, cfg);

    // P_S must complement P_Q.
    const CMatrix pq = matmul(q.basis, q.basis.adjoint());
    const double resid = lapack::operator_norm(
        s.projection.m - (CMatrix::identity(q.trunc.total_dim()) - pq));
    if (resid > cfg.tol_fact)
        throw numeric_error("beurling_roundtrip: P_S does not complement P_Q (residual " +
                            std::to_string(resid) + ")");
    s.roundtrip_complement_residual = resid;
    return s;
}

}  // namespace hardy::submodule
