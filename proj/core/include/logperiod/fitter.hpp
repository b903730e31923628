#pragma once

#include "logperiod/model.hpp"
#include "logperiod/timeseries.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lppl {

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    std::vector<double> nodes() const;
};

struct FitConfig {
    GridSpec tc_grid;
    GridSpec alpha_grid{0.1, 1.0, 0.05};
    GridSpec phi_grid{0.0, 6.021385919380437, 0.2617993877991494};  // 2*pi/24 steps, non-Cosine only
    double lambda = 2.0;
    ShapeKind shape = ShapeKind::cosine();
    Orientation orientation = Orientation::Bubble;
    bool refine = true;
    double refine_tolerance = 1e-6;

    void validate(const PriceSeries& series) const;
};

struct LinearFit {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double phi = 0.0;  // resolved phase (equals input for non-Cosine shapes)
    double rss = 0.0;
};

// Exact least-squares solve of the linear coefficients (A, B, C) at fixed
// (t_c, alpha, phi) via the normal equations. For Cosine the phase is
// absorbed by a 4-column system and the phi argument is ignored.
LinearFit linear_subfit(const PriceSeries& series, double t_c, double alpha,
                        const ShapeKind& shape, double phi,
                        Orientation orientation, double lambda = 2.0);

struct FitResult {
    LpplParams params;
    double rss = 0.0;
    double rmse = 0.0;
    int n_samples = 0;
    long grid_evaluations = 0;
    std::vector<std::pair<double, double>> cost_profile;  // (t_c, best rss)
    TransformState target_transform = TransformState::Raw;
};

// Exhaustive grid over (t_c, alpha[, phi]) with the closed-form linear
// subproblem at every node, then optional derivative-free refinement.
// Deterministic: ties break toward smaller t_c, then alpha, then phi.
FitResult grid_fit(const PriceSeries& series, const FitConfig& config);

// Best rss per t_c grid node, minimized over the remaining dimensions.
std::vector<std::pair<double, double>> cost_profile(const PriceSeries& series,
                                                    const FitConfig& config);

// n equally spaced model samples over [t_from, t_to] plus seeded Gaussian
// noise. The seed fully determines the output.
PriceSeries synth(const LpplParams& params, double t_from, double t_to, int n,
                  double noise_sigma, std::uint64_t seed);

// Thread cap for the grid scan: LOGPERIOD_THREADS env var, else hardware
// concurrency.
int fit_thread_count();

}  // namespace lppl
