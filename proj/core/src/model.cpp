#include "logperiod/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lppl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ShapeKind ShapeKind::sawtooth(double rise_fraction) {
    if (!(rise_fraction > 0.0 && rise_fraction < 1.0))
        throw ModelError("sawtooth rise_fraction must be in (0,1), got " +
                         std::to_string(rise_fraction));
    return {ShapeId::Sawtooth, rise_fraction};
}

std::string to_string(ShapeId id) {
    switch (id) {
        case ShapeId::Cosine: return "cosine";
        case ShapeId::CosModulus: return "cosmod";
        case ShapeId::Sawtooth: return "saw";
    }
    return "cosine";
}

ShapeId shape_id_from_string(std::string_view s) {
    if (s == "cosine") return ShapeId::Cosine;
    if (s == "cosmod") return ShapeId::CosModulus;
    if (s == "saw") return ShapeId::Sawtooth;
    throw ModelError("unknown shape: " + std::string(s));
}

std::string to_string(Orientation o) {
    return o == Orientation::Bubble ? "bubble" : "antibubble";
}

Orientation orientation_from_string(std::string_view s) {
    if (s == "bubble") return Orientation::Bubble;
    if (s == "antibubble") return Orientation::AntiBubble;
    throw ModelError("unknown orientation: " + std::string(s));
}

double omega_from_lambda(double lambda) {
    if (!(lambda > 1.0))
        throw ModelError("lambda must be > 1, got " + std::to_string(lambda));
    return kTwoPi / std::log(lambda);
}

double alpha_from_gamma(double gamma, double lambda) {
    if (!(gamma > 0.0))
        throw ModelError("gamma must be > 0, got " + std::to_string(gamma));
    if (!(lambda > 1.0))
        throw ModelError("lambda must be > 1, got " + std::to_string(lambda));
    return std::log(gamma) / std::log(lambda);
}

ScalingLaw ScalingLaw::from_alpha(double lambda, double alpha) {
    if (!(lambda > 1.0))
        throw ModelError("lambda must be > 1, got " + std::to_string(lambda));
    return {lambda, std::pow(lambda, alpha), alpha};
}

ScalingLaw ScalingLaw::from_gamma(double lambda, double gamma) {
    return {lambda, gamma, alpha_from_gamma(gamma, lambda)};
}

double normalize_phase(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    if (p >= kTwoPi) p = 0.0;
    return p;
}

LpplParams LpplParams::make(double t_c, ScalingLaw scaling, double phi,
                            double A, double B, double C, ShapeKind shape,
                            Orientation orientation) {
    if (shape.id == ShapeId::Sawtooth)
        shape = ShapeKind::sawtooth(shape.rise_fraction);  // range check
    LpplParams p;
    p.t_c = t_c;
    p.scaling = scaling;
    p.omega = omega_from_lambda(scaling.lambda);
    p.phi = normalize_phase(phi);
    p.A = A;
    p.B = B;
    p.C = C;
    p.shape = shape;
    p.orientation = orientation;
    return p;
}

double distance_x(double t, double t_c, Orientation orientation) {
    if (orientation == Orientation::Bubble) {
        if (!(t < t_c))
            throw ModelError("bubble evaluation requires t < t_c");
    } else {
        if (!(t > t_c))
            throw ModelError("anti-bubble evaluation requires t > t_c");
    }
    return std::abs(t - t_c);
}

double eval_shape(double u, const ShapeKind& shape, double phi) {
    switch (shape.id) {
        case ShapeId::Cosine:
            return std::cos(kTwoPi * u + phi);
        case ShapeId::CosModulus:
            return std::abs(std::cos(kTwoPi * u + phi));
        case ShapeId::Sawtooth: {
            const double r = shape.rise_fraction;
            double w = u + phi / kTwoPi;
            w -= std::floor(w);
            if (w < r) return -1.0 + 2.0 * w / r;
            return 1.0 - 2.0 * (w - r) / (1.0 - r);
        }
    }
    return 0.0;
}

double eval_lppl(double t, const LpplParams& params) {
    const double x = distance_x(t, params.t_c, params.orientation);
    const double p = std::pow(x, params.scaling.alpha);
    const double u = std::log(x) / std::log(params.scaling.lambda);
    return params.A + params.B * p +
           params.C * p * eval_shape(u, params.shape, params.phi);
}

namespace {

// Extremum x-positions of x^alpha * cos(omega*ln x + phi) solve
// tan(theta) = alpha/omega with theta = omega*ln x + phi, spaced pi apart
// in theta, so x contracts geometrically by lambda^(1/2).
std::vector<double> cosine_extrema_x(double alpha, double omega, double phi,
                                     double x_lo, double x_hi) {
    const double theta0 = std::atan2(alpha, omega);
    const double theta_lo = omega * std::log(x_lo) + phi;
    const double theta_hi = omega * std::log(x_hi) + phi;
    const double pi = std::numbers::pi;
    long k_lo = static_cast<long>(std::ceil((theta_lo - theta0) / pi));
    long k_hi = static_cast<long>(std::floor((theta_hi - theta0) / pi));
    std::vector<double> xs;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double theta = theta0 + pi * static_cast<double>(k);
        xs.push_back(std::exp((theta - phi) / omega));
    }
    return xs;  // ascending in x
}

std::vector<double> scan_extrema_x(const LpplParams& params, double x_lo,
                                   double x_hi) {
    // dense scan uniform in ln x, fine enough to separate half-periods
    const double ll = std::log(params.scaling.lambda);
    auto term = [&](double x) {
        const double u = std::log(x) / ll;
        return std::pow(x, params.scaling.alpha) *
               eval_shape(u, params.shape, params.phi);
    };
    const double log_lo = std::log(x_lo);
    const double log_hi = std::log(x_hi);
    const int per_period = 400;
    const int n = std::max(
        3, static_cast<int>((log_hi - log_lo) / ll * per_period) + 1);
    std::vector<double> xs;
    double prev_x = std::exp(log_lo);
    double cur_x = std::exp(log_lo + (log_hi - log_lo) / (n - 1));
    double prev_v = term(prev_x);
    double cur_v = term(cur_x);
    for (int i = 2; i < n; ++i) {
        const double next_x =
            std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
        const double next_v = term(next_x);
        if ((cur_v - prev_v) * (next_v - cur_v) < 0.0) xs.push_back(cur_x);
        prev_v = cur_v;
        cur_v = next_v;
        cur_x = next_x;
    }
    return xs;
}

}  // namespace

std::vector<double> extrema_times(const LpplParams& params, double t_from,
                                  double t_to) {
    if (!(t_from < t_to))
        throw ModelError("extrema window must have t_from < t_to");
    // both ends must sit on the valid side of t_c
    const double x_a = distance_x(t_from, params.t_c, params.orientation);
    const double x_b = distance_x(t_to, params.t_c, params.orientation);
    if (params.C == 0.0) return {};
    const double x_lo = std::min(x_a, x_b);
    const double x_hi = std::max(x_a, x_b);

    std::vector<double> xs =
        params.shape.id == ShapeId::Cosine
            ? cosine_extrema_x(params.scaling.alpha, params.omega, params.phi,
                               x_lo, x_hi)
            : scan_extrema_x(params, x_lo, x_hi);

    std::vector<double> ts;
    ts.reserve(xs.size());
    for (double x : xs)
        ts.push_back(params.orientation == Orientation::Bubble
                         ? params.t_c - x
                         : params.t_c + x);
    std::sort(ts.begin(), ts.end());
    return ts;
}

}  // namespace lppl
