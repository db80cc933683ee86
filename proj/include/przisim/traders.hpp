#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>

#include "przisim/przi.hpp"
#include "przisim/prsh.hpp"
#include "przisim/types.hpp"

namespace przisim {

enum class StrategyKind { Ziu, Zic, Gvwy, Shvr, Przi, Prsh, Iprzi };

const char* strategy_name(StrategyKind k);
StrategyKind strategy_from_name(const std::string& name);

// Static market parameters every trader quotes against.
struct MarketParams {
    Price tick = 1;
    Price price_cap = 500;
    Price shvr_lo_seed = 0;  // 0: default to tick
    Price shvr_hi_seed = 0;  // 0: default to price_cap
    BuyerPminPolicy pmin_policy = BuyerPminPolicy::Zic;
};

// What a trader sees when asked to quote.
struct QuoteContext {
    TopOfBook top;
    double time_s = 0.0;
};

// One tick more than the best bid, capped at the limit; the low seed price
// when the bid side is empty.
Price shvr_bid_price(const TopOfBook& top, Price limit, Price tick, Price lo_seed);
// One tick less than the best ask, floored at the limit; the high seed price
// when the ask side is empty.
Price shvr_ask_price(const TopOfBook& top, Price limit, Price tick, Price hi_seed);

// Per-trader strategy selection resolved from config.
struct TraderSpec {
    StrategyKind kind = StrategyKind::Zic;
    double fixed_s = 0.0;      // Przi
    double impact_gain = 4.0;  // Iprzi
    PrshConfig prsh;
};

// A market participant: identity, direction, current assignment, profit
// bookkeeping, a private RNG stream, and the state its strategy needs.
class Trader {
public:
    Trader(int index, Side side, const TraderSpec& spec, const MarketParams& params,
           std::uint64_t seed);

    int index() const { return index_; }
    Side side() const { return side_; }
    const std::string& name() const { return name_; }
    StrategyKind kind() const { return spec_.kind; }

    void assign(Price limit);
    void clear_assignment() { has_assignment_ = false; }
    bool has_assignment() const { return has_assignment_; }
    Price limit() const { return limit_; }
    Assignment assignment() const { return Assignment{side_, limit_}; }

    // Price this trader would quote now, or nullopt if it cannot participate.
    std::optional<Price> quote_price(const QuoteContext& ctx, LutCache& cache);

    void on_trade(Money surplus);
    void on_rival_quote(Price price);  // same-side quote issued by another trader

    Money profit() const { return profit_; }
    std::int64_t trade_count() const { return trades_; }

    // Strategy-space coordinate for trajectory logging: the live s value for
    // the PRZI family, the equivalent anchor for the fixed strategies.
    double current_strategy() const;

    PrshState* prsh() { return prsh_.get(); }
    const PrshState* prsh() const { return prsh_.get(); }
    const BoundsEstimator& bounds() const { return bounds_; }

    std::mt19937_64& rng() { return rng_; }

private:
    Price przi_price(double s, const QuoteContext& ctx, LutCache& cache);
    Price uniform_price(Price lo, Price hi);

    int index_;
    Side side_;
    std::string name_;
    TraderSpec spec_;
    MarketParams params_;
    std::mt19937_64 rng_;
    Price limit_ = 0;
    bool has_assignment_ = false;
    Money profit_ = 0;
    std::int64_t trades_ = 0;

    BoundsEstimator bounds_;
    double live_s_ = 0.0;  // last s used to quote (Przi family)
    std::unique_ptr<PrshState> prsh_;
    std::shared_ptr<const PrziDistribution> dist_;
    LutKey dist_key_;
};

}  // namespace przisim
