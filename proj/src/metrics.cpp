#include "przisim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace przisim {

std::optional<double> smith_alpha(std::span<const Price> prices, double p0) {
    if (prices.empty() || p0 <= 0.0) return std::nullopt;
    double ss = 0.0;
    for (Price p : prices) {
        const double d = double(p) - p0;
        ss += d * d;
    }
    return 100.0 * std::sqrt(ss / double(prices.size())) / p0;
}

std::vector<double> trailing_moving_average(std::span<const double> raw, int window) {
    std::vector<double> out(raw.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        acc += raw[i];
        if (i >= std::size_t(window)) acc -= raw[i - std::size_t(window)];
        const std::size_t n = std::min(i + 1, std::size_t(window));
        out[i] = acc / double(n);
    }
    return out;
}

double mean_of(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double stddev_of(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / double(v.size() - 1));
}

std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double mx = mean_of(x), my = mean_of(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) return std::nullopt;
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

Histogram make_histogram(std::span<const double> values, double lo, double hi, double width) {
    Histogram h;
    h.lo = lo;
    h.width = width;
    const std::size_t n = std::size_t(std::ceil((hi - lo) / width - 1e-12));
    h.bins.assign(std::max<std::size_t>(n, 1), 0);
    for (double v : values) {
        auto i = std::int64_t(std::floor((v - lo) / width));
        i = std::clamp<std::int64_t>(i, 0, std::int64_t(h.bins.size()) - 1);
        ++h.bins[std::size_t(i)];
        ++h.total;
    }
    return h;
}

int dominant_cluster_count(const Histogram& h) {
    int best = 0, run = 0;
    for (int b : h.bins) {
        if (b > 0) {
            run += b;
            best = std::max(best, run);
        } else {
            run = 0;
        }
    }
    return best;
}

WelchResult welch_one_sided(std::span<const double> a, std::span<const double> b) {
    WelchResult w;
    w.mean_a = mean_of(a);
    w.mean_b = mean_of(b);
    const double va = stddev_of(a) * stddev_of(a);
    const double vb = stddev_of(b) * stddev_of(b);
    const double na = double(a.size()), nb = double(b.size());
    const double se2 = va / na + vb / nb;
    if (se2 <= 0.0) {
        w.t = w.mean_b > w.mean_a ? std::numeric_limits<double>::infinity() : 0.0;
        w.df = na + nb - 2.0;
        return w;
    }
    w.t = (w.mean_b - w.mean_a) / std::sqrt(se2);
    const double num = se2 * se2;
    const double den = (va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0);
    w.df = den > 0.0 ? num / den : na + nb - 2.0;
    return w;
}

}  // namespace przisim
