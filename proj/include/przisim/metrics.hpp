#pragma once

#include <optional>
#include <span>
#include <vector>

#include "przisim/types.hpp"

namespace przisim {

// Per-sample series recorded while a session runs. Total profit decomposes
// exactly: pi_total[i] == pi_buyers[i] + pi_sellers[i] at every sample.
struct MetricsSeries {
    double sample_interval_s = 3600.0;
    std::vector<double> time_s;
    std::vector<std::vector<double>> strategy;  // [sample][trader], buyers then sellers
    std::vector<Money> pi_buyers;
    std::vector<Money> pi_sellers;
    std::vector<Money> pi_total;
    std::vector<std::int64_t> trades;
    std::vector<double> alpha_pct;  // NaN where undefined (no p0 or no trades in window)
};

// Smith's equilibration metric: RMS deviation of transaction prices from
// p0 as a percentage of p0. Undefined over an empty window.
std::optional<double> smith_alpha(std::span<const Price> prices, double p0);

// Trailing mean over min(window, samples so far) points.
std::vector<double> trailing_moving_average(std::span<const double> raw, int window);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Least-squares line through (x, y); nullopt for fewer than 2 points or a
// degenerate (constant-x) cloud.
std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y);

struct Histogram {
    double lo = -1.0;
    double width = 0.1;
    std::vector<int> bins;
    int total = 0;

    double bin_center(std::size_t i) const { return lo + (double(i) + 0.5) * width; }
};

Histogram make_histogram(std::span<const double> values, double lo, double hi, double width);

// Number of members in the largest contiguous run of non-empty bins; equal to
// the total count when the distribution forms a single cluster.
int dominant_cluster_count(const Histogram& h);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double mean_a = 0.0;
    double mean_b = 0.0;
};

// Welch's t statistic for mean(b) > mean(a), with Welch-Satterthwaite
// degrees of freedom.
WelchResult welch_one_sided(std::span<const double> a, std::span<const double> b);

double mean_of(std::span<const double> v);
double stddev_of(std::span<const double> v);  // sample std dev

}  // namespace przisim
