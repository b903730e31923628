#include "logperiod/model.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lppl;

namespace {
constexpr double kPi = std::numbers::pi;

LpplParams make_params(double t_c, double alpha, double phi, double A,
                       double B, double C, ShapeKind shape,
                       Orientation orientation, double lambda = 2.0) {
    return LpplParams::make(t_c, ScalingLaw::from_alpha(lambda, alpha), phi,
                            A, B, C, shape, orientation);
}
}  // namespace

TEST_CASE("omega_from_lambda") {
    CHECK(omega_from_lambda(std::exp(1.0)) == doctest::Approx(2.0 * kPi));
    // 2*pi/ln(2), frozen from an independent high-precision evaluation
    CHECK(std::abs(omega_from_lambda(2.0) - 9.06472028365) < 1e-5);
    CHECK_THROWS_AS(omega_from_lambda(1.0), ModelError);
    CHECK_THROWS_AS(omega_from_lambda(0.5), ModelError);
}

TEST_CASE("alpha_from_gamma") {
    CHECK(alpha_from_gamma(2.0, 2.0) == doctest::Approx(1.0));
    CHECK(alpha_from_gamma(1.0, 2.0) == doctest::Approx(0.0));
    CHECK(alpha_from_gamma(4.0, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(alpha_from_gamma(-1.0, 2.0), ModelError);
    CHECK_THROWS_AS(alpha_from_gamma(2.0, 1.0), ModelError);
}

TEST_CASE("ScalingLaw ties alpha, gamma, lambda together") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> alpha(-2.0, 2.0);
    std::uniform_real_distribution<double> lambda(1.1, 5.0);
    for (int i = 0; i < 100; ++i) {
        ScalingLaw law = ScalingLaw::from_alpha(lambda(rng), alpha(rng));
        CHECK(std::abs(law.alpha -
                       std::log(law.gamma) / std::log(law.lambda)) < 1e-12);
    }
}

TEST_CASE("distance_x") {
    CHECK(distance_x(2008.0, 2009.833, Orientation::Bubble) ==
          doctest::Approx(1.833));
    CHECK(distance_x(2002.0, 2000.667, Orientation::AntiBubble) ==
          doctest::Approx(1.333).epsilon(1e-3));
    CHECK_THROWS_AS(distance_x(2010.0, 2009.833, Orientation::Bubble),
                    ModelError);
    CHECK_THROWS_AS(distance_x(2000.0, 2000.667, Orientation::AntiBubble),
                    ModelError);
    CHECK_THROWS_AS(distance_x(2009.833, 2009.833, Orientation::Bubble),
                    ModelError);
}

TEST_CASE("eval_shape point values") {
    CHECK(eval_shape(0.0, ShapeKind::cosine(), 0.0) == doctest::Approx(1.0));
    CHECK(eval_shape(0.5, ShapeKind::cosine(), 0.0) == doctest::Approx(-1.0));
    CHECK(eval_shape(0.5, ShapeKind::cos_modulus(), 0.0) ==
          doctest::Approx(1.0));
    CHECK(eval_shape(0.25, ShapeKind::sawtooth(0.5), 0.0) ==
          doctest::Approx(0.0));
    CHECK(eval_shape(0.5, ShapeKind::sawtooth(0.5), 0.0) ==
          doctest::Approx(1.0));
    CHECK(eval_shape(0.0, ShapeKind::sawtooth(0.3), 0.0) ==
          doctest::Approx(-1.0));
}

TEST_CASE("sawtooth rise fraction must be inside (0,1)") {
    CHECK_THROWS_AS(ShapeKind::sawtooth(0.0), ModelError);
    CHECK_THROWS_AS(ShapeKind::sawtooth(1.0), ModelError);
}

TEST_CASE("every shape has period one and stays within [-1,1]") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> u_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
    const ShapeKind shapes[] = {ShapeKind::cosine(), ShapeKind::cos_modulus(),
                                ShapeKind::sawtooth(0.3)};
    for (const ShapeKind& shape : shapes) {
        double lo = 1.0, hi = -1.0;
        const double phi = phi_dist(rng);
        for (int i = 0; i < 2000; ++i) {
            const double u = u_dist(rng);
            const double v = eval_shape(u, shape, phi);
            CHECK(std::abs(eval_shape(u + 1.0, shape, phi) - v) < 1e-12);
            CHECK(v >= -1.0 - 1e-12);
            CHECK(v <= 1.0 + 1e-12);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi > 1.0 - 1e-3);  // upper bound attained
        if (shape.id == ShapeId::CosModulus)
            CHECK(lo < 1e-3);
        else
            CHECK(lo < -1.0 + 1e-3);
    }
}

TEST_CASE("eval_lppl point values") {
    SUBCASE("constant when B = C = 0") {
        LpplParams p = make_params(2010.0, 0.5, 0.0, 3.5, 0.0, 0.0,
                                   ShapeKind::cosine(), Orientation::Bubble);
        for (double t : {2000.0, 2005.0, 2009.9})
            CHECK(eval_lppl(t, p) == doctest::Approx(3.5));
    }
    SUBCASE("A + B at unit distance when C = 0") {
        LpplParams p = make_params(2010.0, 0.37, 0.0, 2.0, 1.5, 0.0,
                                   ShapeKind::cosine(), Orientation::Bubble);
        CHECK(eval_lppl(2009.0, p) == doctest::Approx(3.5));
    }
    SUBCASE("pure oscillation at x = 4") {
        // ln(4)/ln(2) = 2, so the cosine argument is 4*pi
        LpplParams p = make_params(2010.0, 0.5, 0.0, 0.0, 0.0, 1.0,
                                   ShapeKind::cosine(), Orientation::Bubble);
        CHECK(eval_lppl(2006.0, p) == doctest::Approx(2.0));
    }
}

TEST_CASE("power term is self-similar under rescaling by lambda") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> alpha_dist(0.05, 1.0);
    std::uniform_real_distribution<double> x_dist(0.05, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = alpha_dist(rng);
        const double x = x_dist(rng);
        LpplParams p = make_params(2010.0, alpha, 0.0, 0.0, 1.0, 0.0,
                                   ShapeKind::cosine(), Orientation::Bubble);
        const double gamma = std::pow(2.0, alpha);
        const double lhs = eval_lppl(2010.0 - 2.0 * x, p);
        const double rhs = gamma * eval_lppl(2010.0 - x, p);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("eval_lppl is invariant under (C, phi) -> (-C, phi + pi)") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> t_dist(2000.0, 2009.9);
    LpplParams p = make_params(2010.0, 0.4, 0.7, 1.0, -0.5, 0.2,
                               ShapeKind::cosine(), Orientation::Bubble);
    LpplParams q = make_params(2010.0, 0.4, 0.7 + kPi, 1.0, -0.5, -0.2,
                               ShapeKind::cosine(), Orientation::Bubble);
    for (int i = 0; i < 200; ++i) {
        const double t = t_dist(rng);
        CHECK(std::abs(eval_lppl(t, p) - eval_lppl(t, q)) < 1e-12);
    }
}

TEST_CASE("extrema_times for the alpha = 0 cosine case") {
    LpplParams p = make_params(2010.0, 0.0, 0.0, 0.0, 0.0, 1.0,
                               ShapeKind::cosine(), Orientation::Bubble);
    // maxima at x in {4, 2, 1, 0.5}, minima interleaved at sqrt(2) spacing
    auto ts = extrema_times(p, 2010.0 - 5.0, 2010.0 - 0.4);
    REQUIRE(ts.size() >= 7);
    std::vector<double> xs;
    for (double t : ts) xs.push_back(2010.0 - t);
    // descending in t means descending... xs is descending: largest x first
    CHECK(xs.front() == doctest::Approx(4.0));
    // same-type extrema contract by exactly lambda
    for (std::size_t i = 0; i + 2 < xs.size(); i += 2)
        CHECK(xs[i] / xs[i + 2] == doctest::Approx(2.0).epsilon(1e-9));
    // spacing ratio between same-type extrema times
    for (std::size_t i = 0; i + 4 < ts.size(); i += 2) {
        const double r =
            (ts[i + 2] - ts[i]) / (ts[i + 4] - ts[i + 2]);
        CHECK(r == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("extrema_times is empty when C = 0") {
    LpplParams p = make_params(2010.0, 0.3, 0.0, 1.0, 1.0, 0.0,
                               ShapeKind::cosine(), Orientation::Bubble);
    CHECK(extrema_times(p, 2000.0, 2009.0).empty());
}

TEST_CASE("extrema_times rejects a window on the wrong side") {
    LpplParams p = make_params(2010.0, 0.3, 0.0, 0.0, 0.0, 1.0,
                               ShapeKind::cosine(), Orientation::Bubble);
    CHECK_THROWS_AS(extrema_times(p, 2010.5, 2011.0), ModelError);
}

TEST_CASE("extrema_times numeric scan agrees with the analytic path") {
    // sawtooth extrema with alpha = 0 sit at the waveform corners, which
    // are also geometrically spaced in x
    LpplParams saw = make_params(2010.0, 0.0, 0.0, 0.0, 0.0, 1.0,
                                 ShapeKind::sawtooth(0.5), Orientation::Bubble);
    auto ts = extrema_times(saw, 2010.0 - 5.0, 2010.0 - 0.4);
    REQUIRE(ts.size() >= 5);
    for (std::size_t i = 0; i + 4 < ts.size(); i += 2) {
        const double r = (ts[i + 2] - ts[i]) / (ts[i + 4] - ts[i + 2]);
        CHECK(r == doctest::Approx(2.0).epsilon(1e-2));
    }
}

TEST_CASE("phi is stored normalized into [0, 2*pi)") {
    LpplParams p = make_params(2010.0, 0.5, -1.0, 0.0, 0.0, 1.0,
                               ShapeKind::cosine(), Orientation::Bubble);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2.0 * kPi);
    CHECK(p.phi == doctest::Approx(2.0 * kPi - 1.0));
    CHECK(std::abs(p.omega - omega_from_lambda(2.0)) < 1e-12);
}
