// logperiod: fit log-periodic power-law models to price series, estimate
// critical times from turning-point spacings, superpose bubble components
// and extrapolate fitted scenarios.

#include "logperiod/json_io.hpp"
#include "logperiod/plot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitFit = 3;

struct CliError : std::runtime_error {
    int exit_code;
    CliError(int code, const std::string& msg)
        : std::runtime_error(msg), exit_code(code) {}
};

void emit_report(const json& j, const std::string& output_path) {
    const std::string text = j.dump(2) + "\n";
    if (output_path.empty())
        std::cout << text;
    else
        lppl::atomic_write_text(output_path, text);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(kExitData, "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw CliError(kExitData, path + ": " + e.what());
    }
    return j;
}

double parse_date_flag(const std::string& text, const char* flag) {
    try {
        return lppl::fractional_year(lppl::parse_iso_date(text));
    } catch (const std::exception& e) {
        throw CliError(kExitUsage,
                       std::string(flag) + ": " + e.what());
    }
}

struct InputOptions {
    std::string input;
    bool raw_price = false;
    std::string from_date, to_date;
};

void add_input_options(CLI::App* cmd, InputOptions& opts) {
    cmd->add_option("--input", opts.input, "input CSV (date,value)")
        ->required();
    cmd->add_flag("--raw-price", opts.raw_price,
                  "fit raw prices instead of log-prices");
    cmd->add_option("--from", opts.from_date, "window start (YYYY-MM-DD)");
    cmd->add_option("--to", opts.to_date, "window end (YYYY-MM-DD)");
}

lppl::PriceSeries load_input(const InputOptions& opts) {
    lppl::PriceSeries series = lppl::load_csv(opts.input);
    if (!opts.from_date.empty() || !opts.to_date.empty()) {
        lppl::DateStamp from{1, 1, 1}, to{9999, 12, 31};
        if (!opts.from_date.empty())
            from = lppl::parse_iso_date(opts.from_date);
        if (!opts.to_date.empty()) to = lppl::parse_iso_date(opts.to_date);
        series = lppl::slice(series, from, to);
    }
    if (!opts.raw_price) series = lppl::to_log(series);
    return series;
}

struct FitOptions {
    std::string tc_min, tc_max;
    double tc_step_days = 5.0;
    double alpha_min = 0.1, alpha_max = 1.0, alpha_step = 0.05;
    int phi_steps = 24;
    std::string shape = "cosine";
    double rise_fraction = 0.3;
    double lambda = 2.0;
    std::string orientation = "bubble";
    bool no_refine = false;
};

void add_fit_options(CLI::App* cmd, FitOptions& opts) {
    cmd->add_option("--tc-min", opts.tc_min, "t_c grid start (YYYY-MM-DD)")
        ->required();
    cmd->add_option("--tc-max", opts.tc_max, "t_c grid end (YYYY-MM-DD)")
        ->required();
    cmd->add_option("--tc-step-days", opts.tc_step_days, "t_c grid step");
    cmd->add_option("--alpha-min", opts.alpha_min, "alpha grid start");
    cmd->add_option("--alpha-max", opts.alpha_max, "alpha grid end");
    cmd->add_option("--alpha-step", opts.alpha_step, "alpha grid step");
    cmd->add_option("--phi-steps", opts.phi_steps,
                    "phase grid size (non-cosine shapes)");
    cmd->add_option("--shape", opts.shape, "cosine|cosmod|saw");
    cmd->add_option("--rise-fraction", opts.rise_fraction,
                    "sawtooth rise fraction in (0,1)");
    cmd->add_option("--lambda", opts.lambda, "preferred scaling factor");
    cmd->add_option("--orientation", opts.orientation, "bubble|antibubble");
    cmd->add_flag("--no-refine", opts.no_refine, "skip local refinement");
}

lppl::FitConfig make_fit_config(const FitOptions& opts) {
    lppl::FitConfig config;
    config.tc_grid.min = parse_date_flag(opts.tc_min, "--tc-min");
    config.tc_grid.max = parse_date_flag(opts.tc_max, "--tc-max");
    config.tc_grid.step = opts.tc_step_days / 365.25;
    config.alpha_grid = {opts.alpha_min, opts.alpha_max, opts.alpha_step};
    if (opts.phi_steps < 1)
        throw CliError(kExitUsage, "--phi-steps must be >= 1");
    const double phi_step = 2.0 * M_PI / opts.phi_steps;
    config.phi_grid = {0.0, 2.0 * M_PI - phi_step, phi_step};
    config.lambda = opts.lambda;
    try {
        const lppl::ShapeId id = lppl::shape_id_from_string(opts.shape);
        config.shape = id == lppl::ShapeId::Sawtooth
                           ? lppl::ShapeKind::sawtooth(opts.rise_fraction)
                           : lppl::ShapeKind{id, opts.rise_fraction};
        config.orientation =
            lppl::orientation_from_string(opts.orientation);
    } catch (const lppl::ModelError& e) {
        throw CliError(kExitUsage, e.what());
    }
    config.refine = !opts.no_refine;
    return config;
}

std::vector<double> sample_grid(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

// ---------------------------------------------------------------- fit

int cmd_fit(const InputOptions& in_opts, const FitOptions& fit_opts,
            const std::string& output, const std::string& plot,
            const std::string& plot_csv) {
    lppl::PriceSeries series = load_input(in_opts);
    lppl::FitConfig config = make_fit_config(fit_opts);
    lppl::FitResult result = lppl::grid_fit(series, config);
    emit_report(lppl::to_json(result), output);

    if (!plot.empty() || !plot_csv.empty()) {
        lppl::PlotCurve observed{"observed", series.times(), series.values()};
        lppl::PlotCurve fitted{"fitted", {}, {}};
        fitted.t = sample_grid(series.front().t, series.back().t, 1000);
        for (double t : fitted.t)
            fitted.v.push_back(lppl::eval_lppl(t, result.params));
        lppl::PlotSpec spec;
        spec.title = series.label();
        spec.curves = {observed, fitted};
        spec.vline = result.params.t_c;
        if (!plot.empty()) lppl::write_svg(plot, spec);
        if (!plot_csv.empty())
            lppl::write_plot_csv(plot_csv, {observed, fitted});
    }
    return 0;
}

// ----------------------------------------------------------- spacings

int cmd_spacings(const InputOptions& in_opts, bool have_input,
                 const std::vector<std::string>& point_dates, int window,
                 double prominence, bool have_prominence, double lambda,
                 const std::string& output) {
    lppl::SpacingReport report;
    if (!point_dates.empty()) {
        if (point_dates.size() < 3)
            throw CliError(kExitUsage,
                           "--points needs at least 3 dates, got " +
                               std::to_string(point_dates.size()));
        std::vector<double> times;
        for (const std::string& d : point_dates)
            times.push_back(parse_date_flag(d, "--points"));
        report = lppl::tc_consensus(times, lambda);
    } else {
        if (!have_input)
            throw CliError(kExitUsage, "need --input or --points");
        lppl::PriceSeries series = load_input(in_opts);
        double p = prominence;
        if (!have_prominence) {
            // default: 0.25 * sigma of the series values
            const auto values = series.values();
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double var = 0.0;
            for (double v : values) var += (v - mean) * (v - mean);
            p = 0.25 * std::sqrt(var / static_cast<double>(values.size()));
        }
        lppl::TurningPoints points = lppl::detect_extrema(series, window, p);
        report = lppl::tc_consensus(points, lambda);
    }
    json j = lppl::to_json(report);
    j["tc_consensus_date"] =
        lppl::iso_string(lppl::date_from_fractional_year(report.tc_consensus));
    emit_report(j, output);
    return 0;
}

// ----------------------------------------------------------- forecast

int cmd_forecast(const std::string& params_path, const std::string& from,
                 const std::string& to, int n, const std::string& output,
                 const std::string& plot, const std::string& plot_csv) {
    lppl::LpplParams params;
    try {
        params = lppl::lppl_params_from_json(load_json_file(params_path));
    } catch (const json::exception& e) {
        throw CliError(kExitData, e.what());
    }
    const double t_from = parse_date_flag(from, "--from");
    const double t_to = parse_date_flag(to, "--to");
    if (!(t_from < t_to))
        throw CliError(kExitUsage, "--from must precede --to");
    if (params.orientation == lppl::Orientation::Bubble &&
        !(t_to < params.t_c))
        throw CliError(kExitData,
                       "horizon reaches t_c: model undefined at/after the "
                       "critical time");
    if (params.orientation == lppl::Orientation::AntiBubble &&
        !(t_from > params.t_c))
        throw CliError(kExitData, "horizon starts at/before t_c");
    if (n < 2) throw CliError(kExitUsage, "--n must be >= 2");

    lppl::PlotCurve curve{"forecast", sample_grid(t_from, t_to, n), {}};
    for (double t : curve.t) curve.v.push_back(lppl::eval_lppl(t, params));
    const std::vector<double> turning =
        lppl::extrema_times(params, t_from, t_to);

    json j;
    j["t_c"] = params.t_c;
    j["t_c_date"] =
        lppl::iso_string(lppl::date_from_fractional_year(params.t_c));
    j["params"] = lppl::to_json(params);
    json curve_json = json::array();
    for (std::size_t i = 0; i < curve.t.size(); ++i)
        curve_json.push_back(json::array({curve.t[i], curve.v[i]}));
    j["curve"] = std::move(curve_json);
    j["turning_times"] = turning;
    json dates = json::array();
    for (double t : turning)
        dates.push_back(lppl::iso_string(lppl::date_from_fractional_year(t)));
    j["turning_dates"] = std::move(dates);
    emit_report(j, output);

    if (!plot.empty() || !plot_csv.empty()) {
        lppl::PlotSpec spec;
        spec.title = "forecast";
        spec.curves = {curve};
        spec.vline = params.t_c;
        if (!plot.empty()) lppl::write_svg(plot, spec);
        if (!plot_csv.empty()) lppl::write_plot_csv(plot_csv, {curve});
    }
    return 0;
}

// ---------------------------------------------------------- superpose

int cmd_superpose(const InputOptions& in_opts, const FitOptions& fit_opts,
                  const std::string& component_a_path,
                  const std::string& output, const std::string& fit_output,
                  const std::string& plot, const std::string& plot_csv) {
    lppl::PriceSeries series = load_input(in_opts);
    lppl::LpplParams fixed_a =
        lppl::lppl_params_from_json(load_json_file(component_a_path));
    lppl::FitConfig config = make_fit_config(fit_opts);
    auto [model, fit] = lppl::fit_superposition(series, fixed_a, config);
    emit_report(lppl::to_json(model), output);
    if (!fit_output.empty()) emit_report(lppl::to_json(fit), fit_output);

    if (!plot.empty() || !plot_csv.empty()) {
        const auto ts = sample_grid(model.t_lo, model.t_hi, 1000);
        lppl::PlotCurve a{"component_a", ts, {}, true};
        lppl::PlotCurve b{"component_b", ts, {}, true};
        lppl::PlotCurve sum{"sum", ts, {}, false};
        for (double t : ts) {
            a.v.push_back(lppl::eval_lppl(t, model.component_a));
            b.v.push_back(lppl::eval_lppl(t, model.component_b));
            sum.v.push_back(lppl::eval_superposition(t, model));
        }
        lppl::PlotSpec spec;
        spec.title = series.label();
        spec.curves = {a, b, sum};
        spec.vline = model.component_b.t_c;
        if (!plot.empty()) lppl::write_svg(plot, spec);
        if (!plot_csv.empty()) lppl::write_plot_csv(plot_csv, {a, b, sum});
    }
    return 0;
}

// -------------------------------------------------------------- synth

int cmd_synth(const std::string& params_path, const std::string& from,
              const std::string& to, int n, double noise_sigma,
              std::uint64_t seed, bool emit_raw, const std::string& output) {
    lppl::LpplParams params =
        lppl::lppl_params_from_json(load_json_file(params_path));
    const double t_from = parse_date_flag(from, "--from");
    const double t_to = parse_date_flag(to, "--to");
    lppl::PriceSeries series =
        lppl::synth(params, t_from, t_to, n, noise_sigma, seed);

    std::ostringstream csv;
    csv << "date,value\n";
    std::string prev_date;
    for (const lppl::Sample& s : series.samples()) {
        const std::string date =
            lppl::iso_string(lppl::date_from_fractional_year(s.t));
        if (date == prev_date)
            throw CliError(kExitUsage,
                           "sample spacing below one day: reduce --n");
        prev_date = date;
        // model values are log-price-like; written as prices unless --raw
        const double v = emit_raw ? s.v : std::exp(s.v);
        if (!(v > 0.0))
            throw CliError(kExitData,
                           "non-positive value with --raw at " + date);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        csv << date << ',' << buf << '\n';
    }
    if (output.empty())
        std::cout << csv.str();
    else
        lppl::atomic_write_text(output, csv.str());
    return 0;
}

// ---------------------------------------------------------- normalize

int cmd_normalize(const InputOptions& in_opts, bool take_log,
                  const std::string& output) {
    InputOptions opts = in_opts;
    opts.raw_price = !take_log;  // reuse load_input's log step
    lppl::PriceSeries series = lppl::normalize(load_input(opts));
    std::ostringstream csv;
    csv << "date,value\n";
    for (const lppl::Sample& s : series.samples()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", s.v);
        csv << lppl::iso_string(lppl::date_from_fractional_year(s.t)) << ','
            << buf << '\n';
    }
    if (output.empty())
        std::cout << csv.str();
    else
        lppl::atomic_write_text(output, csv.str());
    return 0;
}

int fail(int code, const std::string& message) {
    json err;
    err["error"] = {{"exit_code", code}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-periodic power-law analysis of price time series"};
    app.require_subcommand(1);

    std::string output, plot, plot_csv, fit_output;

    // fit
    auto* fit = app.add_subcommand("fit", "fit one log-periodic component");
    InputOptions fit_in;
    FitOptions fit_cfg;
    add_input_options(fit, fit_in);
    add_fit_options(fit, fit_cfg);
    fit->add_option("--output", output, "FitResult JSON path");
    fit->add_option("--plot", plot, "SVG plot path");
    fit->add_option("--plot-csv", plot_csv, "tidy CSV plot path");

    // spacings
    auto* spacings =
        app.add_subcommand("spacings", "fit-free T_c from turning points");
    InputOptions sp_in;
    spacings->add_option("--input", sp_in.input, "input CSV");
    spacings->add_flag("--raw-price", sp_in.raw_price,
                       "analyze raw prices instead of log-prices");
    spacings->add_option("--from", sp_in.from_date, "window start");
    spacings->add_option("--to", sp_in.to_date, "window end");
    std::vector<std::string> point_dates;
    spacings->add_option("--points", point_dates,
                         "turning-point dates, bypassing detection")
        ->delimiter(',');
    int sp_window = 10;
    double sp_prominence = 0.0;
    double sp_lambda = 2.0;
    spacings->add_option("--window", sp_window, "detection half-width");
    auto* prom_opt = spacings->add_option("--prominence", sp_prominence,
                                          "absolute prominence threshold");
    spacings->add_option("--lambda", sp_lambda, "assumed scaling factor");
    spacings->add_option("--output", output, "SpacingReport JSON path");

    // forecast
    auto* forecast =
        app.add_subcommand("forecast", "extrapolate a fitted scenario");
    std::string fc_params, fc_from, fc_to;
    int fc_n = 1000;
    forecast->add_option("--params", fc_params, "LpplParams JSON")->required();
    forecast->add_option("--from", fc_from, "curve start (YYYY-MM-DD)")
        ->required();
    forecast->add_option("--to", fc_to, "horizon end (YYYY-MM-DD)")
        ->required();
    forecast->add_option("--n", fc_n, "curve samples");
    forecast->add_option("--output", output, "forecast JSON path");
    forecast->add_option("--plot", plot, "SVG plot path");
    forecast->add_option("--plot-csv", plot_csv, "tidy CSV plot path");

    // superpose
    auto* superpose = app.add_subcommand(
        "superpose", "two-stage anti-bubble + bubble superposition fit");
    InputOptions sup_in;
    FitOptions sup_cfg;
    std::string component_a_path;
    add_input_options(superpose, sup_in);
    add_fit_options(superpose, sup_cfg);
    superpose->add_option("--component-a", component_a_path,
                          "stage-a LpplParams JSON")
        ->required();
    superpose->add_option("--output", output, "SuperpositionModel JSON path");
    superpose->add_option("--fit-output", fit_output,
                          "stage-b FitResult JSON path");
    superpose->add_option("--plot", plot, "SVG plot path");
    superpose->add_option("--plot-csv", plot_csv, "tidy CSV plot path");

    // synth
    auto* synth =
        app.add_subcommand("synth", "generate a synthetic model series");
    std::string sy_params, sy_from, sy_to;
    int sy_n = 1000;
    double sy_sigma = 0.0;
    std::uint64_t sy_seed = 0;
    bool sy_raw = false;
    synth->add_option("--params", sy_params, "LpplParams JSON")->required();
    synth->add_option("--from", sy_from, "start date")->required();
    synth->add_option("--to", sy_to, "end date")->required();
    synth->add_option("--n", sy_n, "number of samples");
    synth->add_option("--noise-sigma", sy_sigma, "additive Gaussian sigma");
    synth->add_option("--seed", sy_seed, "noise seed");
    synth->add_flag("--raw", sy_raw,
                    "write model values directly instead of exp(value)");
    synth->add_option("--output", output, "CSV path");

    // normalize
    auto* normalize = app.add_subcommand(
        "normalize", "zero-mean unit-sigma transform of a series");
    InputOptions nz_in;
    bool nz_log = true;
    normalize->add_option("--input", nz_in.input, "input CSV")->required();
    normalize->add_flag("!--no-log", nz_log,
                        "normalize raw prices, skipping the log transform");
    normalize->add_option("--from", nz_in.from_date, "window start");
    normalize->add_option("--to", nz_in.to_date, "window end");
    normalize->add_option("--output", output, "CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        return fail(kExitUsage, e.what());
    }

    try {
        if (fit->parsed())
            return cmd_fit(fit_in, fit_cfg, output, plot, plot_csv);
        if (spacings->parsed())
            return cmd_spacings(sp_in, !sp_in.input.empty(), point_dates,
                                sp_window, sp_prominence,
                                prom_opt->count() > 0, sp_lambda, output);
        if (forecast->parsed())
            return cmd_forecast(fc_params, fc_from, fc_to, fc_n, output, plot,
                                plot_csv);
        if (superpose->parsed())
            return cmd_superpose(sup_in, sup_cfg, component_a_path, output,
                                 fit_output, plot, plot_csv);
        if (synth->parsed())
            return cmd_synth(sy_params, sy_from, sy_to, sy_n, sy_sigma,
                             sy_seed, sy_raw, output);
        if (normalize->parsed())
            return cmd_normalize(nz_in, nz_log, output);
    } catch (const CliError& e) {
        return fail(e.exit_code, e.what());
    } catch (const lppl::FitError& e) {
        return fail(kExitFit, e.what());
    } catch (const lppl::DataError& e) {
        return fail(kExitData, e.what());
    } catch (const lppl::ModelError& e) {
        return fail(kExitData, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitUsage, e.what());
    } catch (const std::exception& e) {
        return fail(kExitData, e.what());
    }
    return fail(kExitUsage, "no command");
}
