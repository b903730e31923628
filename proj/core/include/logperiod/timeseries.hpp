#pragma once

#include "logperiod/datestamp.hpp"

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lppl {

// Raised for problems with input data (I/O, malformed rows, invariant
// violations of a price series).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TransformState { Raw, Log, Normalized };

std::string to_string(TransformState s);
TransformState transform_state_from_string(std::string_view s);

struct Sample {
    double t;  // fractional year
    double v;
};

// Immutable ordered (time, value) series. Timestamps strictly increase,
// length >= 2, raw prices strictly positive.
class PriceSeries {
public:
    PriceSeries(std::vector<Sample> samples, std::string label,
                TransformState state);

    std::span<const Sample> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    const Sample& front() const { return samples_.front(); }
    const Sample& back() const { return samples_.back(); }
    const std::string& label() const { return label_; }
    TransformState transform_state() const { return state_; }

    std::vector<double> times() const;
    std::vector<double> values() const;
    double value_range() const;  // max(v) - min(v)

private:
    std::vector<Sample> samples_;
    std::string label_;
    TransformState state_;
};

struct CsvConfig {
    int date_column = 0;
    int value_column = 1;
};

// CSV: optional header, columns date,value; ISO-8601 dates; LF or CRLF.
// Rows are sorted ascending by date; duplicate dates are an error.
PriceSeries load_csv(const std::filesystem::path& path,
                     const CsvConfig& config = {});

PriceSeries to_log(const PriceSeries& series);

// v -> (v - mean) / sigma with population (1/N) standard deviation.
PriceSeries normalize(const PriceSeries& series);

PriceSeries slice(const PriceSeries& series, const DateStamp& from,
                  const DateStamp& to);

}  // namespace lppl
