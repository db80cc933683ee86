#include "przisim/przi.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace przisim {

double rectifier(double x) {
    if (x == 0.0) return kCurvatureEps;
    if (x > 0.0 && x < kCurvatureEps) return kCurvatureEps;
    if (x < 0.0 && x > -kCurvatureEps) return -kCurvatureEps;
    return std::clamp(x, -kCurvatureCutoff, kCurvatureCutoff);
}

double strategy_curvature(double s) {
    return rectifier(kCurvatureGain * std::tan(M_PI * (s - 0.5)));
}

double pmf_envelope(double x, double s, std::int64_t r) {
    assert(r >= 1);
    if (s == 0.0) return 1.0 / double(r);
    const double c = strategy_curvature(s);
    const double g = std::expm1(c * x) / std::expm1(c);
    return s > 0.0 ? g : 1.0 - g;
}

double PrziDistribution::mean() const {
    double m = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) m += pmf[j] * double(price_at(j));
    return m;
}

PrziDistribution build_distribution(double s, Price p_min, Price p_max, Price tick, Side side) {
    if (tick < 1 || p_min < tick || p_max < p_min || (p_max - p_min) % tick != 0)
        throw std::invalid_argument("build_distribution: bad price bounds");

    const std::int64_t r = (p_max - p_min) / tick;
    PrziDistribution d;
    d.p_min = p_min;
    d.tick = tick;
    d.pmf.assign(std::size_t(r) + 1, 0.0);
    d.cdf.assign(std::size_t(r) + 1, 0.0);

    if (r == 0) {
        d.pmf[0] = 1.0;
        d.cdf[0] = 1.0;
        return d;
    }

    const bool buyer = side == Side::Bid;
    if (s == 1.0 || s == -1.0) {
        // Limiting shapes: all mass on one price.
        const std::size_t j = (buyer == (s == 1.0)) ? std::size_t(r) : 0;
        d.pmf[j] = 1.0;
        for (std::size_t i = 0; i < d.cdf.size(); ++i) d.cdf[i] = i >= j ? 1.0 : 0.0;
        return d;
    }

    // Envelope values and the normalizer are computed in one canonical order;
    // a seller reads the table mirrored (its argument is 1 - N(p) = (r-j)/r),
    // which keeps buyer and seller PMFs exact mirrors of each other.
    std::vector<double> envelope(std::size_t(r) + 1);
    double sum = 0.0;
    for (std::int64_t j = 0; j <= r; ++j) {
        const double v = std::max(pmf_envelope(double(j) / double(r), s, r), 0.0);
        envelope[std::size_t(j)] = v;
        sum += v;
    }
    for (std::int64_t j = 0; j <= r; ++j)
        d.pmf[std::size_t(j)] = envelope[std::size_t(buyer ? j : r - j)];
    double acc = 0.0;
    for (std::size_t j = 0; j < d.pmf.size(); ++j) {
        d.pmf[j] /= sum;
        acc += d.pmf[j];
        d.cdf[j] = std::min(acc, 1.0);  // accumulation may drift a few ulp past 1
    }
    d.cdf.back() = 1.0;  // anchor the terminal value so u=1 is always reachable
    return d;
}

Price sample_price(const PrziDistribution& d, double u) {
    auto it = std::lower_bound(d.cdf.begin(), d.cdf.end(), u);
    if (it == d.cdf.end()) --it;
    std::size_t j = std::size_t(it - d.cdf.begin());
    while (j + 1 < d.cdf.size() && d.cdf[j] <= 0.0) ++j;
    return d.price_at(j);
}

void dump_distribution_csv(const PrziDistribution& d, std::ostream& os) {
    os << "price,pmf,cdf\n";
    char line[96];
    for (std::size_t j = 0; j < d.size(); ++j) {
        std::snprintf(line, sizeof line, "%lld,%.12g,%.12g\n",
                      static_cast<long long>(d.price_at(j)), d.pmf[j], d.cdf[j]);
        os << line;
    }
}

BoundsEstimator::BoundsEstimator(Side side, double coeff, Price tick, Price price_cap,
                                 BuyerPminPolicy policy)
    : side_(side), coeff_(coeff), tick_(tick), cap_(price_cap), policy_(policy) {
    if (coeff_ <= 1.0) coeff_ = 1.0 + 1e-9;
    if (side_ == Side::Bid && policy_ == BuyerPminPolicy::Zic) {
        zic_bound_ = tick_;
    }
}

namespace {
Price round_to_tick(double v, Price tick) {
    return Price(std::llround(v / double(tick))) * tick;
}
}  // namespace

void BoundsEstimator::on_assignment(Price limit) {
    if (side_ == Side::Ask) {
        if (!has_assignment_ || limit > extreme_limit_) {
            extreme_limit_ = limit;
            const Price guess = std::clamp(round_to_tick(coeff_ * double(limit), tick_), limit, cap_);
            zic_bound_ = std::max(zic_bound_, guess);  // never decays back down
        }
    } else {
        if (policy_ == BuyerPminPolicy::Zic) {
            has_assignment_ = true;
            return;
        }
        if (!has_assignment_ || limit < extreme_limit_) {
            extreme_limit_ = limit;
            const Price guess = std::clamp(round_to_tick(double(limit) / coeff_, tick_), tick_, limit);
            zic_bound_ = has_assignment_ ? std::min(zic_bound_, guess) : guess;
        }
    }
    has_assignment_ = true;
}

void BoundsEstimator::on_rival_quote(Price price) {
    if (!has_assignment_) return;
    if (side_ == Side::Ask) {
        if (price > zic_bound_) zic_bound_ = std::min(price, cap_);
    } else {
        if (policy_ == BuyerPminPolicy::Zic) return;
        if (price < zic_bound_) zic_bound_ = std::max(price, tick_);
    }
}

namespace {
Price blend_price(Price zic_value, Price target, double s, Price tick) {
    if (s == -1.0) return target;
    const double v = (1.0 + s) * double(zic_value) - s * double(target);
    return round_to_tick(v, tick);
}
}  // namespace

PriceBounds quote_bounds(Side trader_side, double s, Price limit, Price zic_bound,
                         Price shvr_target, Price tick, Price price_cap) {
    PriceBounds b;
    if (trader_side == Side::Ask) {
        b.lo = limit;
        b.hi = std::max(zic_bound, limit);
        if (s < 0.0) {
            b.lo = blend_price(b.lo, shvr_target, s, tick);
            b.hi = blend_price(b.hi, shvr_target, s, tick);
        }
    } else {
        b.lo = std::min(zic_bound, limit);
        b.hi = limit;
        if (s < 0.0) {
            b.lo = blend_price(b.lo, shvr_target, s, tick);
            b.hi = blend_price(b.hi, shvr_target, s, tick);
        }
    }
    b.lo = std::clamp(b.lo, tick, price_cap);
    b.hi = std::clamp(b.hi, tick, price_cap);
    if (b.lo > b.hi) b.lo = b.hi;
    return b;
}

std::int32_t LutCache::quantize(double s) {
    return std::int32_t(std::llround(s / kStrategyResolution));
}

std::shared_ptr<const PrziDistribution> LutCache::get_or_build(double s, Price p_min, Price p_max,
                                                               Price tick, Side side) {
    const LutKey key{quantize(s), p_min, p_max, tick, side};
    {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
    }
    auto built = std::make_shared<const PrziDistribution>(
        build_distribution(double(key.s_q) * kStrategyResolution, p_min, p_max, tick, side));
    builds_.fetch_add(1, std::memory_order_relaxed);
    std::unique_lock lock(mu_);
    if (map_.size() >= max_entries_) map_.clear();
    auto [it, inserted] = map_.try_emplace(key, built);
    return it->second;
}

std::size_t LutCache::entries() const {
    std::shared_lock lock(mu_);
    return map_.size();
}

}  // namespace przisim
