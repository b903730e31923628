#include "logperiod/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lppl {

std::string to_string(ExtremumKind k) {
    return k == ExtremumKind::Max ? "max" : "min";
}

TurningPoints detect_extrema(const PriceSeries& series, int w, double p) {
    if (w < 1) throw DataError("window half-width must be >= 1");
    if (p < 0.0) throw DataError("prominence must be >= 0");
    const auto n = static_cast<int>(series.size());
    if (n < 2 * w + 1)
        throw DataError("series too short for window: need " +
                        std::to_string(2 * w + 1) + " samples, have " +
                        std::to_string(n));

    TurningPoints out;
    out.window = w;
    out.prominence = p;
    const auto s = series.samples();
    for (int i = w; i < n - w; ++i) {
        const double v = s[static_cast<std::size_t>(i)].v;
        bool is_max = true, is_min = true;
        for (int j = i - w; j <= i + w; ++j) {
            if (j == i) continue;
            const double vj = s[static_cast<std::size_t>(j)].v;
            if (vj >= v) is_max = false;
            if (vj <= v) is_min = false;
        }
        if (!is_max && !is_min) continue;

        // prominence: gap to the nearer opposite-side level on each flank
        double left = v, right = v;
        for (int j = i - w; j < i; ++j)
            left = is_max ? std::min(left, s[static_cast<std::size_t>(j)].v)
                          : std::max(left, s[static_cast<std::size_t>(j)].v);
        for (int j = i + 1; j <= i + w; ++j)
            right = is_max
                        ? std::min(right, s[static_cast<std::size_t>(j)].v)
                        : std::max(right, s[static_cast<std::size_t>(j)].v);
        const double gap = is_max ? v - std::max(left, right)
                                  : std::min(left, right) - v;
        if (gap < p) continue;
        out.points.push_back({s[static_cast<std::size_t>(i)].t, v,
                              is_max ? ExtremumKind::Max : ExtremumKind::Min});
    }
    return out;
}

namespace {

std::vector<double> raw_ratios(const std::vector<double>& times) {
    if (times.size() < 3)
        throw DataError("need at least 3 turning points, have " +
                        std::to_string(times.size()));
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 2 < times.size(); ++i) {
        const double d1 = times[i + 1] - times[i];
        const double d2 = times[i + 2] - times[i + 1];
        if (!(d1 > 0.0) || !(d2 > 0.0))
            throw DataError("turning times must strictly increase");
        ratios.push_back(d1 / d2);
    }
    return ratios;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::sqrt(var / static_cast<double>(v.size()));
}

std::vector<double> kind_filtered_times(const TurningPoints& points,
                                        bool same_kind_only,
                                        ExtremumKind kind) {
    std::vector<double> times;
    for (const TurningPoint& tp : points.points)
        if (!same_kind_only || tp.kind == kind) times.push_back(tp.t);
    return times;
}

}  // namespace

std::vector<double> spacing_ratios(const std::vector<double>& times) {
    std::vector<double> ratios = raw_ratios(times);
    // Spacings shrinking forward => bubble accumulation ahead, ratios >= 1
    // already. Growing spacings (anti-bubble) report the reciprocal so that
    // contraction-consistent sequences always read as >= 1.
    if (median(ratios) < 1.0)
        for (double& r : ratios) r = 1.0 / r;
    return ratios;
}

std::vector<double> spacing_ratios(const TurningPoints& points,
                                   bool same_kind_only) {
    if (!same_kind_only) {
        std::vector<double> times;
        for (const TurningPoint& tp : points.points) times.push_back(tp.t);
        return spacing_ratios(times);
    }
    // prefer whichever kind yields more triples; maxima on a tie
    auto maxima = kind_filtered_times(points, true, ExtremumKind::Max);
    auto minima = kind_filtered_times(points, true, ExtremumKind::Min);
    return spacing_ratios(minima.size() > maxima.size() ? minima : maxima);
}

double tc_from_triple(double t1, double t2, double t3) {
    if (!(t1 < t2 && t2 < t3))
        throw DataError("triple must be strictly increasing");
    // algebraically (t2^2 - t1*t3)/(2*t2 - t1 - t3), written in terms of
    // the spacings to stay stable for large absolute times
    const double a = t2 - t1;
    const double b = t3 - t2;
    if (a == b)
        throw DataError(
            "equal spacings: no finite accumulation point");
    return t1 + a * a / (a - b);
}

namespace {

SpacingReport consensus_over_times(const std::vector<double>& times,
                                   double lambda_assumed) {
    if (times.size() < 3)
        throw DataError("need at least 3 same-kind turning points, have " +
                        std::to_string(times.size()));
    SpacingReport report;
    report.lambda_assumed = lambda_assumed;
    report.ratios = spacing_ratios(times);

    const double d_first = times[1] - times[0];
    const double d_last = times[times.size() - 1] - times[times.size() - 2];
    report.orientation = d_last <= d_first ? Orientation::Bubble
                                           : Orientation::AntiBubble;

    for (std::size_t i = 0; i + 2 < times.size(); ++i) {
        try {
            report.tc_estimates.push_back(
                tc_from_triple(times[i], times[i + 1], times[i + 2]));
        } catch (const DataError&) {
            // degenerate triple: skipped
        }
    }
    if (report.tc_estimates.empty())
        throw DataError("every turning-point triple was degenerate");
    report.tc_consensus = median(report.tc_estimates);
    report.tc_dispersion = stddev(report.tc_estimates);
    return report;
}

}  // namespace

SpacingReport tc_consensus(const TurningPoints& points,
                           double lambda_assumed) {
    auto maxima = kind_filtered_times(points, true, ExtremumKind::Max);
    auto minima = kind_filtered_times(points, true, ExtremumKind::Min);
    SpacingReport report = consensus_over_times(
        minima.size() > maxima.size() ? minima : maxima, lambda_assumed);
    report.points = points.points;
    return report;
}

SpacingReport tc_consensus(const std::vector<double>& times,
                           double lambda_assumed) {
    return consensus_over_times(times, lambda_assumed);
}

}  // namespace lppl
