#include "logperiod/json_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = LOGPERIOD_CLI_PATH;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "logperiod_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, std::string* out = nullptr,
        std::string* err = nullptr) {
    const fs::path out_path = work_dir() / "stdout.txt";
    const fs::path err_path = work_dir() / "stderr.txt";
    const std::string cmd = std::string(kCli) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    if (out) *out = slurp(out_path);
    if (err) *err = slurp(err_path);
    return WEXITSTATUS(status);
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// true t_c of the bundled synthetic fixture: 2005-07-01 -> 2005.49589
constexpr double kFixtureTc = 2005.0 + 181.0 / 365.0;

fs::path fixture_params() {
    static fs::path path = [] {
        lppl::LpplParams p = lppl::LpplParams::make(
            kFixtureTc, lppl::ScalingLaw::from_alpha(2.0, 0.45), 1.0, 7.0,
            -0.8, 0.08, lppl::ShapeKind::cosine(), lppl::Orientation::Bubble);
        fs::path f = work_dir() / "true_params.json";
        std::ofstream(f) << lppl::to_json(p).dump(2);
        return f;
    }();
    return path;
}

fs::path fixture_csv() {
    static fs::path path = [] {
        fs::path f = work_dir() / "fixture.csv";
        const int rc = run("synth --params " + fixture_params().string() +
                           " --from 2000-01-03 --to 2004-12-30 --n 900"
                           " --noise-sigma 0.004 --seed 11 --output " +
                           f.string());
        REQUIRE(rc == 0);
        return f;
    }();
    return path;
}

}  // namespace

TEST_CASE("fit on the synthetic fixture recovers t_c") {
    const fs::path out = work_dir() / "fit.json";
    const fs::path svg = work_dir() / "fit.svg";
    const fs::path csv = work_dir() / "fit_plot.csv";
    const int rc =
        run("fit --input " + fixture_csv().string() +
            " --orientation bubble --tc-min 2005-02-01 --tc-max 2006-06-01"
            " --output " + out.string() + " --plot " + svg.string() +
            " --plot-csv " + csv.string());
    CHECK(rc == 0);
    json j = json::parse(slurp_file(out));
    CHECK(std::abs(j["params"]["t_c"].get<double>() - kFixtureTc) < 0.05);
    CHECK(j["target_transform"] == "log");
    CHECK(j["cost_profile"].size() > 10);

    // plot artifacts: SVG with polylines, tidy CSV with both curves
    const std::string svg_text = slurp_file(svg);
    CHECK(svg_text.find("<polyline") != std::string::npos);
    std::ifstream csv_in(csv);
    std::string header;
    std::getline(csv_in, header);
    CHECK(header == "t,observed,fitted");
}

TEST_CASE("missing input file exits with the data error code") {
    std::string err;
    const int rc = run(
        "fit --input /nonexistent.csv --orientation bubble"
        " --tc-min 2005-02-01 --tc-max 2006-06-01",
        nullptr, &err);
    CHECK(rc == 2);
    json j = json::parse(err);
    CHECK(j["error"]["exit_code"] == 2);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run("fit --input x.csv") == 1);          // missing required flags
    CHECK(run("unknown-command") == 1);
    CHECK(run("fit --input " + fixture_csv().string() +
              " --orientation sideways --tc-min 2005-02-01 --tc-max "
              "2006-06-01") == 1);
}

TEST_CASE("spacings --points reproduces the exact geometric triple") {
    std::string out;
    const int rc = run(
        "spacings --points 2000-01-01,2004-01-01,2006-01-01", &out);
    CHECK(rc == 0);
    json j = json::parse(out);
    CHECK(j["tc_consensus_date"] == "2008-01-01");
    CHECK(std::abs(j["tc_consensus"].get<double>() - 2008.0) < 3.0 / 365.0);
    CHECK(j["ratios"].size() == 1);
    CHECK(std::abs(j["ratios"][0].get<double>() - 2.0) < 1e-9);
}

TEST_CASE("spacings --points with two dates exits 1") {
    CHECK(run("spacings --points 2000-01-01,2004-01-01") == 1);
}

TEST_CASE("spacings detection path on an oscillation-dominated series") {
    // trend-free, noiseless: turning points are unambiguous
    lppl::LpplParams p = lppl::LpplParams::make(
        kFixtureTc, lppl::ScalingLaw::from_alpha(2.0, 0.2), 0.3, 7.0, 0.0,
        0.5, lppl::ShapeKind::cosine(), lppl::Orientation::Bubble);
    const fs::path params = work_dir() / "oscillation_params.json";
    std::ofstream(params) << lppl::to_json(p).dump(2);
    const fs::path csv = work_dir() / "oscillation.csv";
    REQUIRE(run("synth --params " + params.string() +
                " --from 2000-01-03 --to 2005-03-01 --n 1200"
                " --noise-sigma 0 --seed 1 --output " + csv.string()) == 0);
    std::string out;
    const int rc =
        run("spacings --input " + csv.string() + " --prominence 0", &out);
    CHECK(rc == 0);
    json j = json::parse(out);
    CHECK(std::abs(j["tc_consensus"].get<double>() - kFixtureTc) < 0.1);
    CHECK(j["orientation"] == "bubble");
}

TEST_CASE("forecast emits curve and turning dates") {
    std::string out;
    const int rc = run("forecast --params " + fixture_params().string() +
                           " --from 2005-01-03 --to 2005-06-01 --n 200",
                       &out);
    CHECK(rc == 0);
    json j = json::parse(out);
    CHECK(j["curve"].size() == 200);
    CHECK(j["turning_dates"].size() == j["turning_times"].size());
    CHECK(j["t_c_date"] == "2005-07-01");
}

TEST_CASE("forecast horizon reaching t_c is an error") {
    std::string err;
    const int rc = run("forecast --params " + fixture_params().string() +
                           " --from 2005-01-03 --to 2005-07-03",
                       nullptr, &err);
    CHECK(rc == 2);
    CHECK(json::parse(err)["error"]["message"].get<std::string>().find(
              "t_c") != std::string::npos);
}

TEST_CASE("forecast of a pure trend is monotone") {
    lppl::LpplParams p = lppl::LpplParams::make(
        kFixtureTc, lppl::ScalingLaw::from_alpha(2.0, 0.45), 0.0, 7.0, -0.8,
        0.0, lppl::ShapeKind::cosine(), lppl::Orientation::Bubble);
    const fs::path f = work_dir() / "trend_params.json";
    std::ofstream(f) << lppl::to_json(p).dump(2);
    std::string out;
    REQUIRE(run("forecast --params " + f.string() +
                    " --from 2004-01-02 --to 2005-06-01 --n 100",
                &out) == 0);
    json j = json::parse(out);
    CHECK(j["turning_times"].empty());
    double prev = -1e300;
    for (const auto& row : j["curve"]) {
        CHECK(row[1].get<double>() > prev);  // B < 0: rising toward t_c
        prev = row[1].get<double>();
    }
}

TEST_CASE("superpose fits the bubble component on a two-component sum") {
    // stage-a anti-bubble, fixed exactly
    lppl::LpplParams a = lppl::LpplParams::make(
        2000.5, lppl::ScalingLaw::from_alpha(2.0, 0.4), 1.0, 7.0, 0.3, 0.05,
        lppl::ShapeKind::cosine(), lppl::Orientation::AntiBubble);
    lppl::LpplParams b = lppl::LpplParams::make(
        2009.5, lppl::ScalingLaw::from_alpha(2.0, 0.45), 2.0, 0.0, -0.8,
        0.08, lppl::ShapeKind::cosine(), lppl::Orientation::Bubble);
    const fs::path a_path = work_dir() / "component_a.json";
    std::ofstream(a_path) << lppl::to_json(a).dump(2);

    // the sum written as a price CSV (exp of the model values)
    const fs::path sum_csv = work_dir() / "two_component.csv";
    {
        std::ofstream csv(sum_csv);
        csv << "date,value\n";
        for (int i = 0; i < 700; ++i) {
            const double t = 2001.0 + (2007.0 - 2001.0) * i / 699.0;
            const auto d = lppl::date_from_fractional_year(t);
            csv << lppl::iso_string(d) << ','
                << std::exp(lppl::eval_lppl(t, a) + lppl::eval_lppl(t, b))
                << '\n';
        }
    }
    const fs::path out = work_dir() / "superposition.json";
    const fs::path plot_csv = work_dir() / "superposition_plot.csv";
    const int rc = run(
        "superpose --input " + sum_csv.string() + " --component-a " +
        a_path.string() +
        " --orientation bubble --tc-min 2008-01-01 --tc-max 2010-12-01"
        " --output " + out.string() + " --plot-csv " + plot_csv.string());
    CHECK(rc == 0);
    json j = json::parse(slurp_file(out));
    CHECK(std::abs(j["component_b"]["t_c"].get<double>() - b.t_c) < 0.05);
    CHECK(j["component_b"]["A"].get<double>() == 0.0);

    std::ifstream csv_in(plot_csv);
    std::string header;
    std::getline(csv_in, header);
    CHECK(header == "t,component_a,component_b,sum");
}

TEST_CASE("superpose with a missing stage-a file exits 2") {
    CHECK(run("superpose --input " + fixture_csv().string() +
              " --component-a /nonexistent.json --orientation bubble"
              " --tc-min 2008-01-01 --tc-max 2010-12-01") == 2);
}

TEST_CASE("commands are byte-deterministic") {
    const fs::path out1 = work_dir() / "det1.json";
    const fs::path out2 = work_dir() / "det2.json";
    const std::string fit_args =
        "fit --input " + fixture_csv().string() +
        " --orientation bubble --tc-min 2005-02-01 --tc-max 2006-06-01"
        " --output ";
    REQUIRE(run(fit_args + out1.string()) == 0);
    REQUIRE(run(fit_args + out2.string()) == 0);
    CHECK(slurp_file(out1) == slurp_file(out2));

    const fs::path csv1 = work_dir() / "det1.csv";
    const fs::path csv2 = work_dir() / "det2.csv";
    const std::string synth_args =
        "synth --params " + fixture_params().string() +
        " --from 2000-01-03 --to 2004-12-30 --n 500 --noise-sigma 0.01"
        " --seed 5 --output ";
    REQUIRE(run(synth_args + csv1.string()) == 0);
    REQUIRE(run(synth_args + csv2.string()) == 0);
    CHECK(slurp_file(csv1) == slurp_file(csv2));
}

TEST_CASE("normalize writes a zero-mean unit-sigma series") {
    const fs::path out = work_dir() / "normalized.csv";
    REQUIRE(run("normalize --input " + fixture_csv().string() +
                " --output " + out.string()) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "date,value");
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    while (std::getline(in, line)) {
        const double v = std::stod(line.substr(line.find(',') + 1));
        sum += v;
        sum2 += v * v;
        ++n;
    }
    CHECK(n == 900);
    CHECK(std::abs(sum / n) < 1e-9);
    CHECK(std::abs(sum2 / n - 1.0) < 1e-9);
}
