#include "hardy/json_io.hpp"

#include <algorithm>

#include "hardy/errors.hpp"

namespace hardy::json_io {

using blaschke::BlaschkeProduct;

ordered_json complex_to_json(cplx z) {
    ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

cplx parse_complex(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw input_error("complex numbers must be objects with \"re\" and \"im\"");
    if (!j["re"].is_number() || !j["im"].is_number())
        throw input_error("complex parts must be numbers");
    return {j["re"].get<double>(), j["im"].get<double>()};
}

BlaschkeProduct parse_blaschke(const json& j) {
    if (!j.is_object() || !j.contains("type")) throw input_error("inner function needs a \"type\"");
    const std::string type = j["type"].get<std::string>();
    if (type == "zero") return BlaschkeProduct::zero_function();
    if (type != "blaschke")
        throw input_error("unsupported inner-function type \"" + type +
                          "\" (only finite Blaschke products and \"zero\" are representable)");
    std::vector<cplx> zeros;
    if (j.contains("zeros")) {
        if (!j["zeros"].is_array()) throw input_error("\"zeros\" must be an array");
        for (const auto& z : j["zeros"]) zeros.push_back(parse_complex(z));
    }
    cplx constant(1.0, 0.0);
    if (j.contains("constant")) constant = parse_complex(j["constant"]);
    return BlaschkeProduct(std::move(zeros), constant);
}

ordered_json blaschke_to_json(const BlaschkeProduct& b) {
    ordered_json j;
    if (b.is_zero_function()) {
        j["type"] = "zero";
        return j;
    }
    j["type"] = "blaschke";
    ordered_json zeros = ordered_json::array();
    for (const auto& z : b.zeros()) zeros.push_back(complex_to_json(z));
    j["zeros"] = std::move(zeros);
    j["constant"] = complex_to_json(b.constant());
    return j;
}

namespace {

polydisc::PolydiscTruncation parse_trunc(const json& j, std::size_t default_truncation) {
    if (!j.contains("variables"))
        throw input_error("input needs a \"variables\" count");
    if (!j["variables"].is_number_unsigned())
        throw input_error("\"variables\" must be a non-negative integer");
    std::size_t degree = default_truncation;
    if (j.contains("truncation")) {
        if (!j["truncation"].is_number_unsigned())
            throw input_error("\"truncation\" must be a non-negative integer");
        degree = j["truncation"].get<std::size_t>();
    }
    polydisc::PolydiscTruncation t{j["variables"].get<std::size_t>(), degree};
    if (t.n < 1) throw input_error("\"variables\" must be >= 1");
    if (t.per_var_degree < 1) throw input_error("\"truncation\" must be >= 1");
    return t;
}

}  // namespace

ParsedInput parse_input(const json& j, std::size_t default_truncation) {
    if (!j.is_object()) throw input_error("top-level input must be a JSON object");
    ParsedInput out;
    if (j.contains("module")) {
        QuotientSpec spec;
        spec.trunc = parse_trunc(j, default_truncation);
        const auto& m = j["module"];
        if (!m.is_object() || !m.contains("type")) throw input_error("\"module\" needs a \"type\"");
        const std::string type = m["type"].get<std::string>();
        if (type == "tensor") {
            spec.is_tensor = true;
            if (!m.contains("factors") || !m["factors"].is_array() || m["factors"].empty())
                throw input_error("tensor module needs a non-empty \"factors\" array");
            if (m["factors"].size() != spec.trunc.n)
                throw input_error("tensor module needs one factor per variable");
            for (const auto& f : m["factors"]) spec.factors.push_back(parse_blaschke(f));
        } else if (type == "raw") {
            if (!m.contains("spanning_set") || !m["spanning_set"].is_array() ||
                m["spanning_set"].empty())
                throw input_error("raw module needs a non-empty \"spanning_set\"");
            const std::size_t dim = spec.trunc.total_dim();
            spec.spanning = CMatrix(dim, m["spanning_set"].size());
            std::size_t col = 0;
            for (const auto& vec : m["spanning_set"]) {
                if (!vec.is_array()) throw input_error("spanning vectors must be arrays of terms");
                for (const auto& term : vec) {
                    if (!term.is_array() || term.size() != 2)
                        throw input_error("each term must be [multi-index, coefficient]");
                    const auto& mi = term[0];
                    if (!mi.is_array() || mi.size() != spec.trunc.n)
                        throw input_error("multi-index length must equal \"variables\"");
                    std::size_t flat = 0;
                    for (std::size_t v = 1; v <= spec.trunc.n; ++v) {
                        const std::size_t k = mi[v - 1].get<std::size_t>();
                        if (k > spec.trunc.per_var_degree)
                            throw input_error("multi-index exceeds the truncation");
                        flat += k * spec.trunc.stride(v);
                    }
                    spec.spanning(flat, col) += parse_complex(term[1]);
                }
                ++col;
            }
        } else {
            throw input_error("module type must be \"tensor\" or \"raw\"");
        }
        out.quotient = std::move(spec);
    } else if (j.contains("submodule")) {
        SubmoduleSpec spec;
        spec.trunc = parse_trunc(j, default_truncation);
        const auto& s = j["submodule"];
        if (!s.is_object() || !s.contains("inners") || !s["inners"].is_array() ||
            s["inners"].empty())
            throw input_error("\"submodule\" needs a non-empty \"inners\" array");
        for (const auto& e : s["inners"]) {
            if (!e.is_object() || !e.contains("var") || !e.contains("theta"))
                throw input_error("each inner needs \"var\" and \"theta\"");
            spec.inners.emplace_back(e["var"].get<std::size_t>(), parse_blaschke(e["theta"]));
        }
        std::sort(spec.inners.begin(), spec.inners.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < spec.inners.size(); ++i)
            if (spec.inners[i - 1].first == spec.inners[i].first)
                throw input_error("duplicate variable index in \"inners\"");
        out.submodule = std::move(spec);
    } else {
        throw input_error("input must contain \"module\" or \"submodule\"");
    }
    return out;
}

BuiltQuotient build_quotient(const QuotientSpec& spec, const RunConfig& cfg) {
    BuiltQuotient out;
    out.effective_degree = spec.trunc.per_var_degree;
    if (spec.is_tensor) {
        for (const auto& f : spec.factors)
            if (!f.is_zero_function())
                out.effective_degree = std::max(
                    out.effective_degree, model_space::guard_truncation(f, out.effective_degree));
        out.degree_raised = out.effective_degree > spec.trunc.per_var_degree;
        polydisc::PolydiscTruncation t{spec.trunc.n, out.effective_degree};
        t.check_limit(cfg.max_dimension);
        std::vector<model_space::ModelSpace> factors;
        for (const auto& f : spec.factors)
            factors.push_back(f.is_zero_function()
                                  ? model_space::full_space(out.effective_degree)
                                  : model_space::build_model_space(f, out.effective_degree));
        out.module = polydisc::tensor_quotient(factors, cfg.max_dimension);
    } else {
        spec.trunc.check_limit(cfg.max_dimension);
        out.module = polydisc::raw_quotient(spec.trunc, spec.spanning, cfg.tol_rank);
    }
    return out;
}

ordered_json factorization_to_json(const factorization::Factorization& f) {
    ordered_json j;
    ordered_json factors = ordered_json::array();
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (f.factors[i].is_full) {
            ordered_json e;
            e["type"] = "full";
            factors.push_back(std::move(e));
        } else {
            factors.push_back(blaschke_to_json(f.thetas[i]));
        }
    }
    j["factors"] = std::move(factors);
    j["residual"] = f.residual;
    j["doubly_commuting_residual"] = f.dc_residual;
    j["jordan_block"] = f.jordan_block;
    ordered_json warnings = ordered_json::array();
    for (const auto& w : f.warnings) warnings.push_back(w);
    j["warnings"] = std::move(warnings);
    return j;
}

ordered_json submodule_to_json(const submodule::CoDoublyCommutingSubmodule& s) {
    ordered_json j;
    ordered_json inners = ordered_json::array();
    for (const auto& [var, theta] : s.inners) {
        ordered_json e;
        e["var"] = var;
        e["theta"] = blaschke_to_json(theta);
        inners.push_back(std::move(e));
    }
    j["inners"] = std::move(inners);
    j["quotient_dim"] = s.perp_basis.cols();
    j["multiplier_truncation_diagnostic"] = s.multiplier_truncation_diagnostic;
    return j;
}

}  // namespace hardy::json_io
