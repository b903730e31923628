#include "logperiod/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace lppl {

std::string to_string(TransformState s) {
    switch (s) {
        case TransformState::Raw: return "raw";
        case TransformState::Log: return "log";
        case TransformState::Normalized: return "normalized";
    }
    return "raw";
}

TransformState transform_state_from_string(std::string_view s) {
    if (s == "raw") return TransformState::Raw;
    if (s == "log") return TransformState::Log;
    if (s == "normalized") return TransformState::Normalized;
    throw std::invalid_argument("unknown transform state: " + std::string(s));
}

PriceSeries::PriceSeries(std::vector<Sample> samples, std::string label,
                         TransformState state)
    : samples_(std::move(samples)), label_(std::move(label)), state_(state) {
    if (samples_.size() < 2)
        throw DataError("too few samples: need at least 2, got " +
                        std::to_string(samples_.size()));
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        if (!(samples_[i - 1].t < samples_[i].t))
            throw DataError("timestamps not strictly increasing at index " +
                            std::to_string(i));
    }
    if (state_ == TransformState::Raw) {
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (!(samples_[i].v > 0.0))
                throw DataError("non-positive raw price at index " +
                                std::to_string(i));
        }
    }
}

std::vector<double> PriceSeries::times() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(),
                   [](const Sample& s) { return s.t; });
    return out;
}

std::vector<double> PriceSeries::values() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(),
                   [](const Sample& s) { return s.v; });
    return out;
}

double PriceSeries::value_range() const {
    auto [lo, hi] = std::minmax_element(
        samples_.begin(), samples_.end(),
        [](const Sample& a, const Sample& b) { return a.v < b.v; });
    return hi->v - lo->v;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

PriceSeries load_csv(const std::filesystem::path& path,
                     const CsvConfig& config) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());

    struct Row {
        DateStamp date;
        double value;
    };
    std::vector<Row> rows;
    std::string line;
    int line_no = 0;
    bool first = true;
    const int need = std::max(config.date_column, config.value_column) + 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (first) {
            first = false;
            // optional header: skip if the date cell does not parse
            try {
                parse_iso_date(trim(fields.at(
                    static_cast<std::size_t>(config.date_column))));
            } catch (const std::exception&) {
                continue;
            }
        }
        if (static_cast<int>(fields.size()) < need)
            throw DataError("row " + std::to_string(line_no) +
                            ": too few columns");
        Row row;
        try {
            row.date = parse_iso_date(trim(
                fields[static_cast<std::size_t>(config.date_column)]));
        } catch (const std::exception& e) {
            throw DataError("row " + std::to_string(line_no) +
                            ": bad date: " + e.what());
        }
        const std::string value_str =
            trim(fields[static_cast<std::size_t>(config.value_column)]);
        std::size_t pos = 0;
        try {
            row.value = std::stod(value_str, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != value_str.size())
            throw DataError("row " + std::to_string(line_no) +
                            ": bad value '" + value_str + "'");
        if (!(row.value > 0.0))
            throw DataError("row " + std::to_string(line_no) +
                            ": non-positive price " + value_str);
        rows.push_back(row);
    }
    if (rows.size() < 2)
        throw DataError("too few samples in " + path.string() + ": got " +
                        std::to_string(rows.size()));

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].date == rows[i].date)
            throw DataError("duplicate date " + iso_string(rows[i].date));
    }

    std::vector<Sample> samples;
    samples.reserve(rows.size());
    for (const Row& r : rows)
        samples.push_back({fractional_year(r.date), r.value});
    return PriceSeries(std::move(samples), path.stem().string(),
                       TransformState::Raw);
}

PriceSeries to_log(const PriceSeries& series) {
    if (series.transform_state() != TransformState::Raw)
        throw DataError("to_log requires a raw series, got " +
                        to_string(series.transform_state()));
    std::vector<Sample> samples(series.samples().begin(),
                                series.samples().end());
    for (Sample& s : samples) {
        if (!(s.v > 0.0)) throw DataError("log of non-positive value");
        s.v = std::log(s.v);
    }
    return PriceSeries(std::move(samples), series.label(),
                       TransformState::Log);
}

PriceSeries normalize(const PriceSeries& series) {
    const auto n = static_cast<double>(series.size());
    double mean = 0.0;
    for (const Sample& s : series.samples()) mean += s.v;
    mean /= n;
    double var = 0.0;
    for (const Sample& s : series.samples())
        var += (s.v - mean) * (s.v - mean);
    var /= n;  // population variance
    const double sigma = std::sqrt(var);
    if (!(sigma > 0.0)) throw DataError("constant series: sigma = 0");

    std::vector<Sample> samples(series.samples().begin(),
                                series.samples().end());
    for (Sample& s : samples) s.v = (s.v - mean) / sigma;
    return PriceSeries(std::move(samples), series.label(),
                       TransformState::Normalized);
}

PriceSeries slice(const PriceSeries& series, const DateStamp& from,
                  const DateStamp& to) {
    if (!(from < to))
        throw DataError("inverted slice range: " + iso_string(from) +
                        " .. " + iso_string(to));
    const double lo = fractional_year(from);
    const double hi = fractional_year(to);
    std::vector<Sample> kept;
    for (const Sample& s : series.samples())
        if (s.t >= lo && s.t <= hi) kept.push_back(s);
    if (kept.size() < 2)
        throw DataError("slice keeps fewer than 2 samples");
    return PriceSeries(std::move(kept), series.label(),
                       series.transform_state());
}

}  // namespace lppl
