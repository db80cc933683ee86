#pragma once

#include "przisim/types.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace przisim {

// Strategy parameter s in [-1,+1]: s=0 quotes like ZIC, s=+1 like GVWY,
// s=-1 like SHVR; intermediate values warp the quote-price PMF between them.

constexpr double kCurvatureCutoff = 100.0;  // symmetric bound on the curvature constant
constexpr double kCurvatureEps = 1e-6;      // near-zero clip, avoids 0/0 in the envelope
constexpr double kCurvatureGain = 4.0;      // multiplier on the tangent

// Symmetric clamp to [-cutoff,+cutoff] with near-zero values clipped away
// from zero. Exact zero maps to +eps.
double rectifier(double x);

// Curvature constant c(s) driving the PMF envelope shape. Uses the period-pi
// identity tan(pi(s+1/2)) == tan(pi(s-1/2)) so s=1/2 lands on the clip branch
// exactly and the interval ends stay well conditioned. Not meaningful at
// s = +/-1 or s = 0; those strategies bypass the envelope.
double strategy_curvature(double s);

// PMF envelope over normalized price x in [0,1] for a buyer; a seller
// evaluates it at 1-x. r is the price-range extent in ticks (r >= 1).
double pmf_envelope(double x, double s, std::int64_t r);

// Discrete quote-price distribution over {p_min, p_min+tick, ..., p_max}.
struct PrziDistribution {
    Price p_min = 0;
    Price tick = 1;
    std::vector<double> pmf;  // r+1 entries, sum 1
    std::vector<double> cdf;  // non-decreasing, cdf.back() == 1 exactly

    std::size_t size() const { return pmf.size(); }
    Price price_at(std::size_t j) const { return p_min + Price(j) * tick; }
    Price p_max() const { return price_at(size() - 1); }
    double mean() const;
};

// Evaluates the envelope at the r+1 discrete prices, normalizes to a proper
// PMF and accumulates the CDF. s = +/-1 is a single-point distribution (all
// mass at the urgent end: p_max for buyers at +1, p_min for sellers at +1,
// mirrored at -1), matching the limiting shapes rather than the clamped
// envelope. r = 0 degenerates to a single-point distribution.
PrziDistribution build_distribution(double s, Price p_min, Price p_max, Price tick, Side side);

// Inverse-transform sampling: smallest price whose CDF is >= u, skipping any
// zero-probability prefix so u=0 lands on the first price with positive mass.
Price sample_price(const PrziDistribution& d, double u);

// (price, pmf, cdf) rows for plotting.
void dump_distribution_csv(const PrziDistribution& d, std::ostream& os);

enum class BuyerPminPolicy {
    Zic,       // p_min fixed at one tick
    Heuristic  // private estimate from the limit-price and rival bids
};

// Private estimate of the far edge of a trader's quotable price range:
// a seller's highest plausible ask, a buyer's lowest plausible bid.
//
// Sellers start from coeff * (largest limit assigned so far) and raise the
// estimate whenever a rival asks above it; buyers mirror this with
// max(lowest limit / coeff, tick) and rival bids below the estimate. Under
// the Zic policy a buyer's estimate stays pinned at one tick.
class BoundsEstimator {
public:
    BoundsEstimator(Side side, double coeff, Price tick, Price price_cap,
                    BuyerPminPolicy policy = BuyerPminPolicy::Heuristic);

    void on_assignment(Price limit);
    void on_rival_quote(Price price);

    // Seller p_max / buyer p_min used when s >= 0.
    Price zic_bound() const { return zic_bound_; }
    double coeff() const { return coeff_; }
    bool has_assignment() const { return has_assignment_; }

private:
    Side side_;
    double coeff_;
    Price tick_;
    Price cap_;
    BuyerPminPolicy policy_;
    Price extreme_limit_ = 0;  // seller: largest limit seen; buyer: smallest
    Price zic_bound_ = 0;
    bool has_assignment_ = false;
};

struct PriceBounds {
    Price lo = 0;
    Price hi = 0;
};

// Quote-price range for strategy s. For s >= 0 the range is
// [limit, zic_bound] (seller) or [zic_bound, limit] (buyer). For s in
// [-1,0) both edges are blended linearly toward shvr_target so the interval
// collapses to exactly the one-tick-improvement price at s = -1.
PriceBounds quote_bounds(Side trader_side, double s, Price limit, Price zic_bound,
                         Price shvr_target, Price tick, Price price_cap);

struct LutKey {
    std::int32_t s_q = 0;  // s quantized to the cache resolution
    Price p_min = 0;
    Price p_max = 0;
    Price tick = 1;
    Side side = Side::Bid;

    bool operator==(const LutKey&) const = default;
};

struct LutKeyHash {
    std::size_t operator()(const LutKey& k) const {
        std::uint64_t h = std::uint64_t(std::uint32_t(k.s_q));
        h = splitmix64(h ^ std::uint64_t(k.p_min) * 0x9e3779b97f4a7c15ULL);
        h = splitmix64(h ^ std::uint64_t(k.p_max));
        h = splitmix64(h ^ (std::uint64_t(k.tick) << 1 | std::uint64_t(k.side)));
        return std::size_t(h);
    }
};

// Shared key-value store of distributions: one build per distinct
// (s, p_min, p_max, side), shared by every trader that needs it. Safe for
// concurrent read/insert; duplicate concurrent builds of the same key are
// harmless since tables for equal keys are value-identical. When full the
// cache is dropped wholesale and rebuilt on demand.
class LutCache {
public:
    static constexpr double kStrategyResolution = 1e-4;

    explicit LutCache(std::size_t max_entries = std::size_t(1) << 15)
        : max_entries_(max_entries) {}

    static std::int32_t quantize(double s);

    std::shared_ptr<const PrziDistribution> get_or_build(double s, Price p_min, Price p_max,
                                                         Price tick, Side side);

    std::uint64_t builds() const { return builds_.load(); }
    std::size_t entries() const;

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<LutKey, std::shared_ptr<const PrziDistribution>, LutKeyHash> map_;
    std::atomic<std::uint64_t> builds_{0};
    std::size_t max_entries_;
};

}  // namespace przisim
