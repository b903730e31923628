#pragma once

#include "logperiod/fitter.hpp"
#include "logperiod/model.hpp"
#include "logperiod/timeseries.hpp"

#include <utility>

namespace lppl {

// Sum of a decelerating anti-bubble (past t_c) and an accelerating bubble
// (future t_c) over a valid span strictly bracketed by the two critical
// times. The shared constant offset lives in component_a.A; component_b.A
// is forced to 0 on construction.
struct SuperpositionModel {
    LpplParams component_a;  // AntiBubble
    LpplParams component_b;  // Bubble
    double t_lo = 0.0;
    double t_hi = 0.0;

    static SuperpositionModel make(LpplParams component_a,
                                   LpplParams component_b, double t_lo,
                                   double t_hi);
};

double eval_superposition(double t, const SuperpositionModel& model);

// Two-stage fit: subtract the fixed anti-bubble component from the series,
// then grid_fit the bubble component on the residual.
std::pair<SuperpositionModel, FitResult> fit_superposition(
    const PriceSeries& series, const LpplParams& fixed_a,
    const FitConfig& config_b);

}  // namespace lppl
