#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lppl {

class ModelError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class ShapeId { Cosine, CosModulus, Sawtooth };

// Oscillation waveform of the log-periodic correction. All variants have
// period exactly 1 and unit amplitude.
struct ShapeKind {
    ShapeId id = ShapeId::Cosine;
    double rise_fraction = 0.3;  // Sawtooth only, in (0,1)

    static ShapeKind cosine() { return {ShapeId::Cosine, 0.3}; }
    static ShapeKind cos_modulus() { return {ShapeId::CosModulus, 0.3}; }
    static ShapeKind sawtooth(double rise_fraction);

    bool operator==(const ShapeKind&) const = default;
};

std::string to_string(ShapeId id);
ShapeId shape_id_from_string(std::string_view s);

// Bubble: oscillations accelerate toward a future critical time (t < t_c).
// AntiBubble: oscillations decelerate away from a past one (t > t_c).
enum class Orientation { Bubble, AntiBubble };

std::string to_string(Orientation o);
Orientation orientation_from_string(std::string_view s);

// (lambda, gamma, alpha) tied by alpha = ln(gamma)/ln(lambda).
struct ScalingLaw {
    double lambda = 2.0;
    double gamma = 2.0;
    double alpha = 1.0;

    static ScalingLaw from_alpha(double lambda, double alpha);
    static ScalingLaw from_gamma(double lambda, double gamma);
};

double omega_from_lambda(double lambda);
double alpha_from_gamma(double gamma, double lambda);

// Wraps an angle into [0, 2*pi).
double normalize_phase(double phi);

// One log-periodic component:
//   y(t) = A + B*x^alpha + C*x^alpha * shape(ln(x)/ln(lambda), phi)
// with x = |t - t_c|. omega = 2*pi/ln(lambda) is derived, never free.
struct LpplParams {
    double t_c = 0.0;
    ScalingLaw scaling;
    double omega = 0.0;
    double phi = 0.0;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    ShapeKind shape;
    Orientation orientation = Orientation::Bubble;

    static LpplParams make(double t_c, ScalingLaw scaling, double phi,
                           double A, double B, double C, ShapeKind shape,
                           Orientation orientation);
};

// |t - t_c|, requiring t on the valid side of t_c. t == t_c is an error.
double distance_x(double t, double t_c, Orientation orientation);

// Period-one unit-amplitude waveform evaluated at u with phase phi.
double eval_shape(double u, const ShapeKind& shape, double phi);

double eval_lppl(double t, const LpplParams& params);

// Times of local extrema of the oscillatory term C*x^alpha*shape(...)
// inside [t_from, t_to], ascending. Analytic for Cosine, dense scan
// otherwise. Empty when C == 0.
std::vector<double> extrema_times(const LpplParams& params, double t_from,
                                  double t_to);

}  // namespace lppl
