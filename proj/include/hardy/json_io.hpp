#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hardy/factorization.hpp"
#include "hardy/polydisc.hpp"
#include "hardy/submodule.hpp"

namespace hardy::json_io {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ordered_json complex_to_json(cplx z);
cplx parse_complex(const json& j);

/// {"type":"blaschke","zeros":[{"re":..,"im":..},...],"constant":{...}} or
/// {"type":"zero"}. Constant defaults to 1. Anything else (e.g. a singular
/// inner factor) is a schema error.
blaschke::BlaschkeProduct parse_blaschke(const json& j);
ordered_json blaschke_to_json(const blaschke::BlaschkeProduct& b);

struct QuotientSpec {
    polydisc::PolydiscTruncation trunc;
    bool is_tensor = false;
    std::vector<blaschke::BlaschkeProduct> factors;  // zero function marks FULL slots
    CMatrix spanning;                                // raw only
};

struct SubmoduleSpec {
    polydisc::PolydiscTruncation trunc;
    std::vector<std::pair<std::size_t, blaschke::BlaschkeProduct>> inners;
};

struct ParsedInput {
    std::optional<QuotientSpec> quotient;
    std::optional<SubmoduleSpec> submodule;
};

/// Dispatches on the presence of "module" vs "submodule". "truncation" may
/// be omitted in the input, in which case default_truncation applies.
ParsedInput parse_input(const json& j, std::size_t default_truncation = 8);

/// Builds the quotient module, raising the per-variable degree to the guard
/// threshold of the tensor factors when needed (reported via the return).
struct BuiltQuotient {
    polydisc::QuotientModule module;
    std::size_t effective_degree = 0;
    bool degree_raised = false;
};
BuiltQuotient build_quotient(const QuotientSpec& spec, const RunConfig& cfg);

ordered_json factorization_to_json(const factorization::Factorization& f);
ordered_json submodule_to_json(const submodule::CoDoublyCommutingSubmodule& s);

}  // namespace hardy::json_io
