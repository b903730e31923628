#include "logperiod/superposition.hpp"

#include <cmath>

namespace lppl {

SuperpositionModel SuperpositionModel::make(LpplParams component_a,
                                            LpplParams component_b,
                                            double t_lo, double t_hi) {
    if (component_a.orientation != Orientation::AntiBubble)
        throw ModelError("component_a must be an anti-bubble");
    if (component_b.orientation != Orientation::Bubble)
        throw ModelError("component_b must be a bubble");
    if (!(t_lo < t_hi)) throw ModelError("valid span must have t_lo < t_hi");
    if (!(component_a.t_c < t_lo))
        throw ModelError("component_a.t_c must precede the valid span");
    if (!(t_hi < component_b.t_c))
        throw ModelError("component_b.t_c must follow the valid span");
    if (std::abs(component_a.scaling.lambda - component_b.scaling.lambda) >
        1e-12)
        throw ModelError("components must share the same lambda");

    // single shared offset: carried by component_a
    component_a.A += component_b.A;
    component_b.A = 0.0;
    return {std::move(component_a), std::move(component_b), t_lo, t_hi};
}

double eval_superposition(double t, const SuperpositionModel& model) {
    if (t < model.t_lo || t > model.t_hi)
        throw ModelError("t outside the superposition's valid span");
    return eval_lppl(t, model.component_a) + eval_lppl(t, model.component_b);
}

std::pair<SuperpositionModel, FitResult> fit_superposition(
    const PriceSeries& series, const LpplParams& fixed_a,
    const FitConfig& config_b) {
    if (fixed_a.orientation != Orientation::AntiBubble)
        throw ModelError("stage-a component must be an anti-bubble");
    if (config_b.orientation != Orientation::Bubble)
        throw FitError("stage-b fit must use bubble orientation");
    if (!(fixed_a.t_c < series.front().t))
        throw ModelError("series must start after the anti-bubble t_c");

    std::vector<Sample> residual(series.samples().begin(),
                                 series.samples().end());
    for (Sample& s : residual) s.v -= eval_lppl(s.t, fixed_a);
    PriceSeries residual_series(std::move(residual), series.label(),
                                series.transform_state() == TransformState::Raw
                                    ? TransformState::Log
                                    : series.transform_state());

    FitResult fit = grid_fit(residual_series, config_b);
    SuperpositionModel model = SuperpositionModel::make(
        fixed_a, fit.params, series.front().t, series.back().t);
    return {std::move(model), std::move(fit)};
}

}  // namespace lppl
