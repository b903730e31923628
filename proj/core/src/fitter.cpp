#include "logperiod/fitter.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace lppl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kConditionLimit = 1e12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct NodeSolution {
    double rss = kInf;
    double A = 0.0, B = 0.0, C = 0.0, phi = 0.0;
    bool ok = false;
};

// Least-squares solve of y ~ cols * beta through the normal equations.
// cols holds the design columns contiguously. Throws on a condition
// estimate beyond kConditionLimit.
Eigen::VectorXd solve_normal_equations(
    const std::vector<const std::vector<double>*>& cols,
    const std::vector<double>& y) {
    const int k = static_cast<int>(cols.size());
    const std::size_t n = y.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            double s = 0.0;
            const auto& ca = *cols[static_cast<std::size_t>(a)];
            const auto& cb = *cols[static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < n; ++i) s += ca[i] * cb[i];
            m(a, b) = s;
            m(b, a) = s;
        }
        double s = 0.0;
        const auto& ca = *cols[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < n; ++i) s += ca[i] * y[i];
        rhs(a) = s;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin > kConditionLimit)
        throw FitError("singular normal matrix (condition estimate " +
                       std::to_string(smin > 0.0 ? sv(0) / smin : kInf) +
                       ")");
    return svd.solve(rhs);
}

// Per-t_c precomputed geometry shared across the (alpha, phi) sweep.
struct TcContext {
    std::vector<double> lnx;
    std::vector<double> u;              // log_lambda(x)
    std::vector<double> cosu, sinu;     // Cosine shape only
    std::vector<double> p;              // x^alpha, refilled per alpha
    std::vector<double> g;              // shape values, refilled per phi
    std::vector<double> ones;

    void init(std::span<const Sample> samples, double t_c, double lambda,
              bool cosine) {
        const std::size_t n = samples.size();
        lnx.resize(n);
        u.resize(n);
        p.resize(n);
        ones.assign(n, 1.0);
        const double ll = std::log(lambda);
        for (std::size_t i = 0; i < n; ++i) {
            lnx[i] = std::log(std::abs(samples[i].t - t_c));
            u[i] = lnx[i] / ll;
        }
        if (cosine) {
            cosu.resize(n);
            sinu.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                cosu[i] = std::cos(kTwoPi * u[i]);
                sinu[i] = std::sin(kTwoPi * u[i]);
            }
        }
    }

    void set_alpha(double alpha) {
        for (std::size_t i = 0; i < lnx.size(); ++i)
            p[i] = std::exp(alpha * lnx[i]);
    }
};

NodeSolution solve_cosine_node(const TcContext& ctx,
                               const std::vector<double>& y) {
    const std::size_t n = y.size();
    std::vector<double> pc(n), ps(n);
    for (std::size_t i = 0; i < n; ++i) {
        pc[i] = ctx.p[i] * ctx.cosu[i];
        ps[i] = ctx.p[i] * ctx.sinu[i];
    }
    NodeSolution out;
    Eigen::VectorXd beta;
    try {
        beta = solve_normal_equations({&ctx.ones, &ctx.p, &pc, &ps}, y);
    } catch (const FitError&) {
        return out;
    }
    const double c1 = beta(2), c2 = beta(3);
    out.A = beta(0);
    out.B = beta(1);
    out.C = std::hypot(c1, c2);
    // C*cos(2*pi*u + phi) = c1*cos(2*pi*u) + c2*sin(2*pi*u)
    out.phi = out.C > 0.0 ? normalize_phase(std::atan2(-c2, c1)) : 0.0;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            y[i] - (out.A + out.B * ctx.p[i] + c1 * pc[i] + c2 * ps[i]);
        rss += r * r;
    }
    out.rss = rss;
    out.ok = true;
    return out;
}

NodeSolution solve_shape_node(const TcContext& ctx,
                              const std::vector<double>& y,
                              const ShapeKind& shape, double phi) {
    const std::size_t n = y.size();
    std::vector<double> pg(n);
    for (std::size_t i = 0; i < n; ++i)
        pg[i] = ctx.p[i] * eval_shape(ctx.u[i], shape, phi);
    NodeSolution out;
    Eigen::VectorXd beta;
    try {
        beta = solve_normal_equations({&ctx.ones, &ctx.p, &pg}, y);
    } catch (const FitError&) {
        return out;
    }
    out.A = beta(0);
    out.B = beta(1);
    out.C = beta(2);
    out.phi = normalize_phase(phi);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            y[i] - (out.A + out.B * ctx.p[i] + out.C * pg[i]);
        rss += r * r;
    }
    out.rss = rss;
    out.ok = true;
    return out;
}

struct TcBest {
    NodeSolution sol;
    double alpha = 0.0;
    long evaluations = 0;
};

TcBest scan_tc_node(std::span<const Sample> samples,
                    const std::vector<double>& y, double t_c,
                    const FitConfig& config,
                    const std::vector<double>& alpha_nodes,
                    const std::vector<double>& phi_nodes) {
    const bool cosine = config.shape.id == ShapeId::Cosine;
    TcContext ctx;
    ctx.init(samples, t_c, config.lambda, cosine);
    TcBest best;
    for (double alpha : alpha_nodes) {
        ctx.set_alpha(alpha);
        if (cosine) {
            ++best.evaluations;
            NodeSolution sol = solve_cosine_node(ctx, y);
            if (sol.ok && sol.rss < best.sol.rss) {
                best.sol = sol;
                best.alpha = alpha;
            }
        } else {
            for (double phi : phi_nodes) {
                ++best.evaluations;
                NodeSolution sol = solve_shape_node(ctx, y, config.shape, phi);
                if (sol.ok && sol.rss < best.sol.rss) {
                    best.sol = sol;
                    best.alpha = alpha;
                }
            }
        }
    }
    return best;
}

bool tc_valid(double t_c, const PriceSeries& series, Orientation orientation) {
    return orientation == Orientation::Bubble ? t_c > series.back().t
                                              : t_c < series.front().t;
}

struct GridScan {
    std::vector<TcBest> per_tc;
    std::vector<double> tc_nodes;
    long evaluations = 0;
};

GridScan run_grid_scan(const PriceSeries& series, const FitConfig& config) {
    config.validate(series);
    GridScan scan;
    scan.tc_nodes = config.tc_grid.nodes();
    const std::vector<double> alpha_nodes = config.alpha_grid.nodes();
    const std::vector<double> phi_nodes =
        config.shape.id == ShapeId::Cosine ? std::vector<double>{0.0}
                                           : config.phi_grid.nodes();
    const std::vector<double> y = series.values();
    scan.per_tc.resize(scan.tc_nodes.size());

    const int n_threads = std::min<int>(
        fit_thread_count(), static_cast<int>(scan.tc_nodes.size()));
    auto worker = [&](int tid) {
        for (std::size_t i = static_cast<std::size_t>(tid);
             i < scan.tc_nodes.size();
             i += static_cast<std::size_t>(n_threads)) {
            scan.per_tc[i] = scan_tc_node(series.samples(), y,
                                          scan.tc_nodes[i], config,
                                          alpha_nodes, phi_nodes);
        }
    };
    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }
    for (const TcBest& b : scan.per_tc) scan.evaluations += b.evaluations;
    return scan;
}

struct SearchPoint {
    double t_c, alpha, phi;
};

struct Objective {
    const PriceSeries& series;
    const FitConfig& config;

    NodeSolution eval(const SearchPoint& pt) const {
        const bool cosine = config.shape.id == ShapeId::Cosine;
        TcContext ctx;
        ctx.init(series.samples(), pt.t_c, config.lambda, cosine);
        ctx.set_alpha(pt.alpha);
        const std::vector<double> y = series.values();
        return cosine ? solve_cosine_node(ctx, y)
                      : solve_shape_node(ctx, y, config.shape, pt.phi);
    }
};

// Derivative-free pattern search: poll +/- along each coordinate, move to
// the best strict improvement, otherwise halve all steps.
void refine_fit(const PriceSeries& series, const FitConfig& config,
                SearchPoint& pt, NodeSolution& sol) {
    const bool cosine = config.shape.id == ShapeId::Cosine;
    Objective obj{series, config};
    double step_tc = std::max(config.tc_grid.step * 0.5, 1e-8);
    double step_alpha = std::max(config.alpha_grid.step * 0.5, 1e-8);
    double step_phi = std::max(config.phi_grid.step * 0.5, 1e-8);
    const double floor_tc = config.refine_tolerance * config.tc_grid.step;
    const int n_dims = cosine ? 2 : 3;

    for (int round = 0; round < 500; ++round) {
        SearchPoint best_pt = pt;
        NodeSolution best_sol = sol;
        bool improved = false;
        for (int dim = 0; dim < n_dims; ++dim) {
            for (int sign : {-1, 1}) {
                SearchPoint cand = pt;
                if (dim == 0)
                    cand.t_c += sign * step_tc;
                else if (dim == 1)
                    cand.alpha += sign * step_alpha;
                else
                    cand.phi += sign * step_phi;
                if (!tc_valid(cand.t_c, series, config.orientation)) continue;
                if (!(cand.alpha > 1e-9)) continue;
                NodeSolution cand_sol = obj.eval(cand);
                if (cand_sol.ok && cand_sol.rss < best_sol.rss) {
                    best_sol = cand_sol;
                    best_pt = cand;
                    improved = true;
                }
            }
        }
        if (improved) {
            const double rel =
                (sol.rss - best_sol.rss) /
                std::max(sol.rss, std::numeric_limits<double>::min());
            pt = best_pt;
            sol = best_sol;
            if (rel < config.refine_tolerance && step_tc < floor_tc) break;
        } else {
            step_tc *= 0.5;
            step_alpha *= 0.5;
            step_phi *= 0.5;
            if (step_tc < floor_tc) break;
        }
    }
}

}  // namespace

std::vector<double> GridSpec::nodes() const {
    if (!(step > 0.0)) throw FitError("grid step must be positive");
    if (max < min) throw FitError("grid max < min");
    const int count = static_cast<int>((max - min) / step + 1e-9) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(min + i * step);
    return out;
}

void FitConfig::validate(const PriceSeries& series) const {
    if (!(lambda > 1.0)) throw FitError("lambda must be > 1");
    if (tc_grid.nodes().empty() || alpha_grid.nodes().empty())
        throw FitError("empty grid");
    if (orientation == Orientation::Bubble) {
        if (!(tc_grid.min > series.back().t))
            throw FitError(
                "bubble t_c grid must start after the last sample");
    } else {
        if (!(tc_grid.max < series.front().t))
            throw FitError(
                "anti-bubble t_c grid must end before the first sample");
    }
    if (shape.id != ShapeId::Cosine && phi_grid.nodes().empty())
        throw FitError("empty phi grid");
}

int fit_thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("LOGPERIOD_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return std::min(cap, hw);
    }
    return hw;
}

LinearFit linear_subfit(const PriceSeries& series, double t_c, double alpha,
                        const ShapeKind& shape, double phi,
                        Orientation orientation, double lambda) {
    const std::size_t min_n = shape.id == ShapeId::Cosine ? 5 : 4;
    if (series.size() < min_n)
        throw FitError("too few samples for linear subfit: need " +
                       std::to_string(min_n));
    for (const Sample& s : series.samples())
        distance_x(s.t, t_c, orientation);  // throws on the wrong side

    const bool cosine = shape.id == ShapeId::Cosine;
    TcContext ctx;
    ctx.init(series.samples(), t_c, lambda, cosine);
    ctx.set_alpha(alpha);
    const std::vector<double> y = series.values();
    const NodeSolution sol = cosine
                                 ? solve_cosine_node(ctx, y)
                                 : solve_shape_node(ctx, y, shape, phi);
    if (!sol.ok)
        throw FitError("singular normal matrix in linear subfit");
    return {sol.A, sol.B, sol.C, sol.phi, sol.rss};
}

FitResult grid_fit(const PriceSeries& series, const FitConfig& config) {
    const GridScan scan = run_grid_scan(series, config);

    std::size_t best_i = scan.tc_nodes.size();
    for (std::size_t i = 0; i < scan.tc_nodes.size(); ++i) {
        if (!scan.per_tc[i].sol.ok) continue;
        if (best_i == scan.tc_nodes.size() ||
            scan.per_tc[i].sol.rss < scan.per_tc[best_i].sol.rss)
            best_i = i;
    }
    if (best_i == scan.tc_nodes.size())
        throw FitError("every grid node was singular");

    SearchPoint pt{scan.tc_nodes[best_i], scan.per_tc[best_i].alpha,
                   scan.per_tc[best_i].sol.phi};
    NodeSolution sol = scan.per_tc[best_i].sol;
    if (config.refine) refine_fit(series, config, pt, sol);

    FitResult result;
    result.params = LpplParams::make(
        pt.t_c, ScalingLaw::from_alpha(config.lambda, pt.alpha), sol.phi,
        sol.A, sol.B, sol.C, config.shape, config.orientation);
    result.rss = sol.rss;
    result.n_samples = static_cast<int>(series.size());
    result.rmse = std::sqrt(sol.rss / static_cast<double>(series.size()));
    result.grid_evaluations = scan.evaluations;
    result.target_transform = series.transform_state();
    result.cost_profile.reserve(scan.tc_nodes.size());
    for (std::size_t i = 0; i < scan.tc_nodes.size(); ++i)
        result.cost_profile.emplace_back(scan.tc_nodes[i],
                                         scan.per_tc[i].sol.rss);
    return result;
}

std::vector<std::pair<double, double>> cost_profile(const PriceSeries& series,
                                                    const FitConfig& config) {
    const GridScan scan = run_grid_scan(series, config);
    std::vector<std::pair<double, double>> profile;
    profile.reserve(scan.tc_nodes.size());
    bool any_ok = false;
    for (std::size_t i = 0; i < scan.tc_nodes.size(); ++i) {
        profile.emplace_back(scan.tc_nodes[i], scan.per_tc[i].sol.rss);
        any_ok = any_ok || scan.per_tc[i].sol.ok;
    }
    if (!any_ok) throw FitError("every grid node was singular");
    return profile;
}

PriceSeries synth(const LpplParams& params, double t_from, double t_to, int n,
                  double noise_sigma, std::uint64_t seed) {
    if (n < 4) throw FitError("synth needs n >= 4");
    if (!(t_from < t_to)) throw FitError("synth window must have t_from < t_to");
    distance_x(t_from, params.t_c, params.orientation);
    distance_x(t_to, params.t_c, params.orientation);
    if (!(noise_sigma >= 0.0)) throw FitError("negative noise sigma");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = t_from + (t_to - t_from) * i / (n - 1);
        double v = eval_lppl(t, params);
        if (noise_sigma > 0.0) v += noise_sigma * noise(rng);
        samples.push_back({t, v});
    }
    return PriceSeries(std::move(samples), "synthetic", TransformState::Log);
}

}  // namespace lppl
