#include "hardy/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/factorization.hpp"
#include "hardy/json_io.hpp"
#include "hardy/kernels.hpp"
#include "hardy/lapack.hpp"
#include "hardy/linalg.hpp"
#include "hardy/submodule.hpp"

namespace hardy::commands {

using blaschke::BlaschkeProduct;
using certificate::content_digest;
using certificate::ordered_json;
using kernels::matmul;
using model_space::ModelSpace;
using polydisc::PolydiscTruncation;
using polydisc::QuotientModule;

namespace {

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void begin(VerificationCertificate& cert, std::string command, const json& input,
           const RunConfig& cfg) {
    cert.command = std::move(command);
    cert.input_digest = content_digest(input.dump());
    certificate::fill_tolerances(cert, cfg);
}

void factor_checks(VerificationCertificate& cert, const QuotientModule& q) {
    for (std::size_t i = 0; i < q.factors.size(); ++i) {
        const ModelSpace& f = q.factors[i];
        if (f.is_full) continue;
        const std::string tag = "_q" + std::to_string(i + 1);
        const auto p1 = model_space::project_one(f.theta, f.trunc);
        cert.add("projection_of_one" + tag, "Lemma 2.1", p1.formula1_residual, 1e-10);
        cert.add("compressed_defect" + tag, "Corollary 2.2",
                 std::max(p1.formula2_residual, p1.collinearity_angle), 1e-8);
        const auto reg = model_space::wandering_regeneration(f);
        double resid = reg.residual;
        if (reg.span_dim != reg.expected_dim) resid = std::max(resid, 1.0);
        cert.add("wandering_regeneration" + tag, "Lemma 2.3", resid, 1e-9);
    }
}

ordered_json module_payload(const json_io::BuiltQuotient& bq) {
    ordered_json m;
    m["variables"] = bq.module.trunc.n;
    m["per_var_degree"] = bq.effective_degree;
    m["degree_raised"] = bq.degree_raised;
    m["dimension"] = bq.module.dim();
    m["ambient_dimension"] = bq.module.trunc.total_dim();
    m["provenance"] =
        bq.module.provenance == polydisc::Provenance::TensorBuilt ? "tensor" : "raw";
    return m;
}

// Submodule inputs get the same automatic degree raise as tensor modules:
// the factor model spaces require the guard truncation of each inner.
PolydiscTruncation submodule_trunc(const json_io::SubmoduleSpec& spec, bool* raised) {
    std::size_t deg = spec.trunc.per_var_degree;
    for (const auto& [var, theta] : spec.inners)
        deg = std::max(deg, model_space::guard_truncation(theta, spec.trunc.per_var_degree));
    if (raised) *raised = deg != spec.trunc.per_var_degree;
    return {spec.trunc.n, deg};
}

QuotientModule quotient_from_input(const json_io::ParsedInput& parsed, const RunConfig& cfg,
                                   ordered_json* payload_module) {
    if (parsed.quotient) {
        auto bq = json_io::build_quotient(*parsed.quotient, cfg);
        if (payload_module) *payload_module = module_payload(bq);
        return std::move(bq.module);
    }
    bool raised = false;
    const PolydiscTruncation trunc = submodule_trunc(*parsed.submodule, &raised);
    if (payload_module) {
        ordered_json m;
        m["variables"] = trunc.n;
        m["per_var_degree"] = trunc.per_var_degree;
        m["degree_raised"] = raised;
        *payload_module = std::move(m);
    }
    auto s = submodule::build_submodule(parsed.submodule->inners, trunc, cfg);
    return submodule::quotient_of(s, cfg);
}

// --- selftest helpers -------------------------------------------------------

struct Rng {
    std::mt19937_64 gen;
    std::uniform_real_distribution<double> unif{0.0, 1.0};

    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double real() { return unif(gen); }
    cplx disc_point(double rmax) {
        const double r = rmax * std::sqrt(real());
        const double phi = 2.0 * M_PI * real();
        return cplx(r * std::cos(phi), r * std::sin(phi));
    }
    cplx gauss() {
        std::normal_distribution<double> n;
        return cplx(n(gen), n(gen));
    }
    BlaschkeProduct product(std::size_t max_deg, double rmax) {
        std::uniform_int_distribution<std::size_t> d(1, max_deg);
        std::vector<cplx> zeros(d(gen));
        for (auto& z : zeros) z = disc_point(rmax);
        const double phi = 2.0 * M_PI * real();
        return BlaschkeProduct(std::move(zeros), cplx(std::cos(phi), std::sin(phi)));
    }
    CMatrix gauss_matrix(std::size_t r, std::size_t c) {
        CMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = gauss();
        return m;
    }
    // Entries k/64, exactly representable; serial and parallel kernel paths
    // must then agree bit for bit.
    CMatrix dyadic_matrix(std::size_t r, std::size_t c) {
        std::uniform_int_distribution<int> d(-64, 64);
        CMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = cplx(d(gen) / 64.0, d(gen) / 64.0);
        return m;
    }
    CMatrix unitary(std::size_t d) { return lapack::qr_orth(gauss_matrix(d, d)); }
};

double suite_kernels(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
        const CMatrix a = rng.dyadic_matrix(19, 7), b = rng.dyadic_matrix(7, 11);
        worst = std::max(worst,
                         (kernels::matmul_serial(a, b) - kernels::matmul_omp(a, b)).max_abs());
        const CMatrix c = rng.dyadic_matrix(3, 4), d = rng.dyadic_matrix(2, 5),
                      e = rng.dyadic_matrix(3, 2);
        worst = std::max(worst,
                         (kernels::kron_serial(c, d) - kernels::kron_omp(c, d)).max_abs());
        worst = std::max(worst, (linalg::kron(linalg::kron(c, d), e) -
                                 linalg::kron(c, linalg::kron(d, e)))
                                    .max_abs());
    }
    return worst;
}

double suite_blaschke(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
        const auto b = rng.product(5, 0.9);
        for (int k = 0; k < 32; ++k) {
            const double phi = 2.0 * M_PI * (k + rng.real()) / 32.0;
            const cplx z(std::cos(phi), std::sin(phi));
            worst = std::max(worst, std::abs(std::abs(blaschke::eval(b, z)) - 1.0));
        }
        // Multiplicativity of the Maclaurin series.
        const auto c = rng.product(4, 0.8);
        const auto prod = blaschke::multiply(b, c);
        const std::size_t deg = 18;
        const auto cb = blaschke::taylor_coefficients(b, deg);
        const auto cc = blaschke::taylor_coefficients(c, deg);
        const auto cp = blaschke::taylor_coefficients(prod, deg);
        for (std::size_t m = 0; m <= deg; ++m) {
            cplx conv = 0.0;
            for (std::size_t k = 0; k <= m; ++k) conv += cb[k] * cc[m - k];
            worst = std::max(worst, std::abs(conv - cp[m]));
        }
    }
    return worst;
}

double suite_model_space(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
        const auto theta = rng.product(3, 0.8);
        const auto ms = model_space::build_model_space(theta, 0);
        const auto p1 = model_space::project_one(theta, ms.trunc);
        worst = std::max({worst, p1.formula1_residual, p1.formula2_residual,
                          p1.collinearity_angle});
        const auto reg = model_space::wandering_regeneration(ms);
        worst = std::max(worst, reg.residual);
        if (reg.span_dim != reg.expected_dim) worst = std::max(worst, 1.0);
        const auto rec = model_space::recover_inner_from_shift(ms.shift);
        worst = std::max(worst, blaschke::zero_matching_distance(rec.zeros(), theta.zeros()));
    }
    return worst;
}

double suite_projection_sum(Rng& rng) {
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t d = 12;
        const CMatrix u = rng.unitary(d);
        std::vector<linalg::ProjectionMatrix> ps;
        std::vector<CMatrix> ranges;
        for (int i = 0; i < 3; ++i) {
            std::vector<std::size_t> cols;
            for (std::size_t k = 0; k < d; ++k)
                if (rng.real() < 0.4) cols.push_back(k);
            if (cols.empty()) cols.push_back(0);
            std::vector<std::size_t> all_rows(d);
            std::iota(all_rows.begin(), all_rows.end(), std::size_t(0));
            const CMatrix b = u.submatrix(all_rows, cols);
            ranges.push_back(b);
            ps.push_back(linalg::ProjectionMatrix::certify(matmul(b, b.adjoint()), 1e-10));
        }
        const auto sum = submodule::commuting_projection_sum(ps);
        CMatrix stack = ranges[0];
        for (std::size_t i = 1; i < ranges.size(); ++i) stack = CMatrix::hcat(stack, ranges[i]);
        const auto oracle = linalg::orth_projection_onto_columns(stack);
        worst = std::max(worst, lapack::operator_norm(sum.m - oracle.m));
    }
    return worst;
}

double suite_factorization(Rng& rng, const RunConfig& cfg) {
    double worst = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<blaschke::BlaschkeProduct> thetas = {rng.product(2, 0.4),
                                                         rng.product(2, 0.4)};
        std::size_t n = 0;
        for (const auto& t : thetas)
            n = std::max(n, model_space::guard_truncation(t, t.degree() + 4));
        std::vector<ModelSpace> factors;
        for (const auto& t : thetas)
            factors.push_back(model_space::build_model_space(t, n, false));
        const auto q = polydisc::tensor_quotient(factors, cfg.max_dimension);
        const auto f = factorization::factorize(q, cfg);
        worst = std::max({worst, f.residual, f.dc_residual});
        for (std::size_t i = 0; i < 2; ++i)
            worst = std::max(worst, blaschke::zero_matching_distance(f.thetas[i].zeros(),
                                                                    thetas[i].zeros()));
    }
    return worst;
}

double suite_beurling(Rng& rng, const RunConfig& cfg) {
    double worst = 0.0;
    // Small radius: the submodule route is dense in the ambient dimension,
    // and the guard truncation grows with the zero modulus.
    for (int rep = 0; rep < 2; ++rep) {
        const auto theta = rng.product(2, 0.25);
        const std::size_t n = model_space::guard_truncation(theta, theta.degree() + 4);
        const PolydiscTruncation trunc{2, n};
        const auto s = submodule::build_submodule({{1, theta}}, trunc, cfg);
        worst = std::max({worst, s.lemma_sum_disagreement, s.complementarity_residual});
        const auto q = submodule::quotient_of(s, cfg);
        const auto rt = submodule::beurling_roundtrip(q, cfg);
        worst = std::max(worst, rt.roundtrip_complement_residual);
        if (rt.inners.size() != 1 || rt.inners[0].first != 1)
            worst = std::max(worst, 1.0);
        else
            worst = std::max(worst, blaschke::zero_matching_distance(
                                        rt.inners[0].second.zeros(), theta.zeros()));
    }
    return worst;
}

double suite_hereditary(const RunConfig& cfg) {
    double worst = 0.0;
    for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
        double dev = 0.0;
        polydisc::hereditary_defect(PolydiscTruncation{n, 2}, 1, cfg.max_dimension, &dev);
        worst = std::max(worst, dev);
    }
    return worst;
}

// Negative control: span{1, z1 + z2} is invariant under both adjoint shifts
// but its compressed shifts do not doubly commute.
double suite_raw_negative(const RunConfig& cfg) {
    const PolydiscTruncation trunc{2, 2};
    CMatrix span(trunc.total_dim(), 2);
    span(0, 0) = 1.0;
    span(trunc.stride(1), 1) = 1.0;
    span(trunc.stride(2), 1) = 1.0;
    const auto q = polydisc::raw_quotient(trunc, span, cfg.tol_rank);
    return polydisc::max_doubly_commuting_residual(q);
}

}  // namespace

VerificationCertificate cmd_verify(const json& input, const RunConfig& cfg) {
    Timer timer;
    VerificationCertificate cert;
    begin(cert, "verify", input, cfg);
    const auto parsed = json_io::parse_input(input, cfg.truncation);

    if (parsed.quotient) {
        auto bq = json_io::build_quotient(*parsed.quotient, cfg);
        const QuotientModule& q = bq.module;
        cert.payload["module"] = module_payload(bq);
        cert.add("doubly_commuting", "Definition 1.1",
                 polydisc::max_doubly_commuting_residual(q), cfg.tol_dc);
        factor_checks(cert, q);
        if (q.trunc.n >= 2) {
            const PolydiscTruncation small{q.trunc.n,
                                           std::min<std::size_t>(q.trunc.per_var_degree, 2)};
            double dev = 0.0;
            polydisc::hereditary_defect(small, 1, cfg.max_dimension, &dev);
            cert.add("hereditary_defect_routes", "Theorem 3.2", dev, 1e-12);
        }
    } else {
        bool raised = false;
        const PolydiscTruncation trunc = submodule_trunc(*parsed.submodule, &raised);
        const auto s = submodule::build_submodule(parsed.submodule->inners, trunc, cfg);
        ordered_json m;
        m["variables"] = trunc.n;
        m["per_var_degree"] = trunc.per_var_degree;
        m["degree_raised"] = raised;
        cert.payload["module"] = std::move(m);
        cert.add("projection_sum_formulas", "Lemma 2.6", s.lemma_sum_disagreement, 1e-11);
        cert.add("complementarity", "Corollary 4.2", s.complementarity_residual, 1e-10);
        const auto q = submodule::quotient_of(s, cfg);
        cert.add("quotient_doubly_commuting", "Theorem 4.1",
                 polydisc::max_doubly_commuting_residual(q), cfg.tol_dc);
        factor_checks(cert, q);
        cert.payload["submodule"] = json_io::submodule_to_json(s);
    }
    cert.wall_time_ms = timer.elapsed_ms();
    return cert;
}

VerificationCertificate cmd_factor(const json& input, const RunConfig& cfg) {
    Timer timer;
    VerificationCertificate cert;
    begin(cert, "factor", input, cfg);
    const auto parsed = json_io::parse_input(input, cfg.truncation);
    ordered_json module_info;
    const QuotientModule q = quotient_from_input(parsed, cfg, &module_info);
    if (!module_info.is_null()) cert.payload["module"] = module_info;

    try {
        const auto f = factorization::factorize(q, cfg);
        cert.add("doubly_commuting", "Definition 1.1", f.dc_residual, cfg.tol_dc);
        cert.add("tensor_residual", "Theorem 3.2", f.residual, cfg.tol_fact);
        cert.payload["factorization"] = json_io::factorization_to_json(f);
    } catch (const numeric_error& e) {
        cert.add_bool("factorization_completed", "Theorem 3.2", false);
        cert.payload["error"] = e.what();
    }
    cert.wall_time_ms = timer.elapsed_ms();
    return cert;
}

VerificationCertificate cmd_beurling(const json& input, const RunConfig& cfg) {
    Timer timer;
    VerificationCertificate cert;
    begin(cert, "beurling", input, cfg);
    const auto parsed = json_io::parse_input(input, cfg.truncation);
    ordered_json module_info;
    const QuotientModule q = quotient_from_input(parsed, cfg, &module_info);
    if (!module_info.is_null()) cert.payload["module"] = module_info;

    try {
        const auto rt = submodule::beurling_roundtrip(q, cfg);
        cert.add("projection_complement", "Theorem 4.1", rt.roundtrip_complement_residual,
                 cfg.tol_fact);
        cert.add("projection_sum_formulas", "Lemma 2.6", rt.lemma_sum_disagreement, 1e-11);
        if (parsed.submodule) {
            // The recovered inner list must reproduce the input one.
            double worst = 0.0;
            const auto& given = parsed.submodule->inners;
            if (rt.inners.size() != given.size()) {
                worst = 1.0;
            } else {
                for (std::size_t i = 0; i < given.size(); ++i) {
                    if (rt.inners[i].first != given[i].first) {
                        worst = 1.0;
                        break;
                    }
                    worst = std::max(worst,
                                     blaschke::zero_matching_distance(
                                         rt.inners[i].second.zeros(), given[i].second.zeros()));
                }
            }
            cert.add("inner_recovery", "Corollary 4.2", worst, 1e-7);
        }
        cert.payload["submodule"] = json_io::submodule_to_json(rt);
    } catch (const numeric_error& e) {
        cert.add_bool("roundtrip_completed", "Corollary 4.2", false);
        cert.payload["error"] = e.what();
    }
    cert.wall_time_ms = timer.elapsed_ms();
    return cert;
}

VerificationCertificate cmd_selftest(const RunConfig& cfg) {
    Timer timer;
    VerificationCertificate cert;
    cert.command = "selftest";
    cert.input_digest = content_digest("selftest:seed=" + std::to_string(cfg.seed));
    certificate::fill_tolerances(cert, cfg);
    Rng rng(cfg.seed);

    cert.add("kernel_agreement", "internal", suite_kernels(rng), 0.0);
    cert.add("blaschke_identities", "internal", suite_blaschke(rng), 1e-11);
    cert.add("model_space_identities", "Lemma 2.1", suite_model_space(rng), 1e-8);
    cert.add("projection_sum_oracle", "Lemma 2.6", suite_projection_sum(rng), 1e-10);
    cert.add("tensor_factorization", "Theorem 3.2", suite_factorization(rng, cfg),
             cfg.tol_fact);
    cert.add("beurling_roundtrip", "Corollary 4.2", suite_beurling(rng, cfg), cfg.tol_fact);
    cert.add("hereditary_defect_routes", "Theorem 3.2", suite_hereditary(cfg), 1e-12);
    cert.add_bool("raw_negative_control", "Definition 1.1", suite_raw_negative(cfg) > 0.1);

    cert.payload["seed"] = cfg.seed;
    cert.wall_time_ms = timer.elapsed_ms();
    return cert;
}

int exit_code(const VerificationCertificate& cert) { return cert.pass() ? 0 : 1; }

}  // namespace hardy::commands
