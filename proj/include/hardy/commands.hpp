#pragma once

#include <string>

#include <json.hpp>

#include "hardy/certificate.hpp"
#include "hardy/config.hpp"

namespace hardy::commands {

using certificate::VerificationCertificate;
using nlohmann::json;

/// Structural checks of the input module: doubly-commuting residual, the
/// one-variable projection and regeneration identities per proper tensor
/// factor, the two defect-product routes, and for submodule inputs the
/// projection-sum and complementarity identities.
VerificationCertificate cmd_verify(const json& input, const RunConfig& cfg);

/// Tensor factorization of a doubly commuting quotient module (submodule
/// inputs are factored through their quotient).
VerificationCertificate cmd_factor(const json& input, const RunConfig& cfg);

/// Round trip quotient <-> co-doubly-commuting submodule, with recovery of
/// the inner factors.
VerificationCertificate cmd_beurling(const json& input, const RunConfig& cfg);

/// Seeded randomized exercise of every module against internal oracles.
VerificationCertificate cmd_selftest(const RunConfig& cfg);

/// 0 on pass, 1 when some check failed.
int exit_code(const VerificationCertificate& cert);

}  // namespace hardy::commands
