#include "logperiod/json_io.hpp"

#include <cmath>

namespace lppl {

using nlohmann::json;

json to_json(const LpplParams& params) {
    json j;
    j["t_c"] = params.t_c;
    j["lambda"] = params.scaling.lambda;
    j["alpha"] = params.scaling.alpha;
    j["omega"] = params.omega;
    j["phi"] = params.phi;
    j["A"] = params.A;
    j["B"] = params.B;
    j["C"] = params.C;
    j["shape"] = to_string(params.shape.id);
    j["rise_fraction"] = params.shape.rise_fraction;
    j["orientation"] = to_string(params.orientation);
    return j;
}

LpplParams lppl_params_from_json(const json& j) {
    const double lambda = j.at("lambda").get<double>();
    ShapeKind shape;
    shape.id = shape_id_from_string(j.at("shape").get<std::string>());
    if (shape.id == ShapeId::Sawtooth)
        shape = ShapeKind::sawtooth(j.at("rise_fraction").get<double>());
    else if (j.contains("rise_fraction"))
        shape.rise_fraction = j.at("rise_fraction").get<double>();

    LpplParams params = LpplParams::make(
        j.at("t_c").get<double>(),
        ScalingLaw::from_alpha(lambda, j.at("alpha").get<double>()),
        j.at("phi").get<double>(), j.at("A").get<double>(),
        j.at("B").get<double>(), j.at("C").get<double>(), shape,
        orientation_from_string(j.at("orientation").get<std::string>()));

    if (j.contains("omega")) {
        const double stored = j.at("omega").get<double>();
        if (std::abs(stored - params.omega) > 1e-9)
            throw ModelError("omega " + std::to_string(stored) +
                             " inconsistent with lambda " +
                             std::to_string(lambda));
    }
    return params;
}

json to_json(const FitResult& result) {
    json j;
    j["params"] = to_json(result.params);
    j["rss"] = result.rss;
    j["rmse"] = result.rmse;
    j["n_samples"] = result.n_samples;
    j["grid_evaluations"] = result.grid_evaluations;
    j["target_transform"] = to_string(result.target_transform);
    json profile = json::array();
    for (const auto& [tc, rss] : result.cost_profile)
        profile.push_back(json::array({tc, rss}));
    j["cost_profile"] = std::move(profile);
    return j;
}

FitResult fit_result_from_json(const json& j) {
    FitResult result;
    result.params = lppl_params_from_json(j.at("params"));
    result.rss = j.at("rss").get<double>();
    result.rmse = j.at("rmse").get<double>();
    result.n_samples = j.at("n_samples").get<int>();
    result.grid_evaluations = j.at("grid_evaluations").get<long>();
    result.target_transform =
        transform_state_from_string(j.at("target_transform").get<std::string>());
    for (const auto& row : j.at("cost_profile"))
        result.cost_profile.emplace_back(row.at(0).get<double>(),
                                         row.at(1).get<double>());
    return result;
}

json to_json(const SpacingReport& report) {
    json j;
    j["lambda_assumed"] = report.lambda_assumed;
    j["orientation"] = to_string(report.orientation);
    j["ratios"] = report.ratios;
    j["tc_estimates"] = report.tc_estimates;
    j["tc_consensus"] = report.tc_consensus;
    j["tc_dispersion"] = report.tc_dispersion;
    json points = json::array();
    for (const TurningPoint& p : report.points)
        points.push_back(json::array({p.t, p.v, to_string(p.kind)}));
    j["points"] = std::move(points);
    return j;
}

json to_json(const SuperpositionModel& model) {
    json j;
    j["component_a"] = to_json(model.component_a);
    j["component_b"] = to_json(model.component_b);
    j["t_lo"] = model.t_lo;
    j["t_hi"] = model.t_hi;
    return j;
}

SuperpositionModel superposition_from_json(const json& j) {
    return SuperpositionModel::make(
        lppl_params_from_json(j.at("component_a")),
        lppl_params_from_json(j.at("component_b")),
        j.at("t_lo").get<double>(), j.at("t_hi").get<double>());
}

}  // namespace lppl
