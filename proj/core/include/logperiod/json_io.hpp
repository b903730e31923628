#pragma once

#include "logperiod/fitter.hpp"
#include "logperiod/model.hpp"
#include "logperiod/spacing.hpp"
#include "logperiod/superposition.hpp"

#include <json.hpp>

namespace lppl {

// Flat object {t_c, lambda, alpha, omega, phi, A, B, C, shape,
// rise_fraction, orientation}. On load omega is recomputed from lambda and
// a mismatch > 1e-9 is an error.
nlohmann::json to_json(const LpplParams& params);
LpplParams lppl_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitResult& result);
FitResult fit_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpacingReport& report);

nlohmann::json to_json(const SuperpositionModel& model);
SuperpositionModel superposition_from_json(const nlohmann::json& j);

}  // namespace lppl
