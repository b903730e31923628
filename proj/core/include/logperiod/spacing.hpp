#pragma once

#include "logperiod/model.hpp"
#include "logperiod/timeseries.hpp"

#include <vector>

namespace lppl {

enum class ExtremumKind { Max, Min };

std::string to_string(ExtremumKind k);

struct TurningPoint {
    double t;
    double v;
    ExtremumKind kind;
};

struct TurningPoints {
    std::vector<TurningPoint> points;  // sorted by time
    int window = 10;                   // half-width w
    double prominence = 0.0;
};

// A sample is a max (min) if it is the strict extremum of its centered
// 2w+1 window and its prominence within the window is >= p.
TurningPoints detect_extrema(const PriceSeries& series, int w, double p);

// Consecutive-spacing ratios (t2-t1)/(t3-t2) over turning-point times,
// reciprocated when the sequence decelerates so that ratios are >= 1
// under contraction.
std::vector<double> spacing_ratios(const std::vector<double>& times);
std::vector<double> spacing_ratios(const TurningPoints& points,
                                   bool same_kind_only);

// Accumulation point of the geometric progression through (t1, t2, t3):
//   T_c = (t2^2 - t1*t3) / (2*t2 - t1 - t3)
// Exact when the triple is exactly geometric.
double tc_from_triple(double t1, double t2, double t3);

struct SpacingReport {
    std::vector<double> ratios;
    std::vector<double> tc_estimates;
    double tc_consensus = 0.0;
    double tc_dispersion = 0.0;
    double lambda_assumed = 2.0;
    Orientation orientation = Orientation::Bubble;
    std::vector<TurningPoint> points;
};

// Median T_c over all consecutive same-kind triples; degenerate triples
// are skipped, an error only if every triple degenerates.
SpacingReport tc_consensus(const TurningPoints& points,
                           double lambda_assumed = 2.0);

// Same analysis over bare turning times (e.g. user-supplied dates).
SpacingReport tc_consensus(const std::vector<double>& times,
                           double lambda_assumed = 2.0);

}  // namespace lppl
