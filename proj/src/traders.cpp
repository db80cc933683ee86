#include "przisim/traders.hpp"

#include <cmath>
#include <stdexcept>

#include "przisim/market_signals.hpp"

namespace przisim {

const char* strategy_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::Ziu: return "ziu";
        case StrategyKind::Zic: return "zic";
        case StrategyKind::Gvwy: return "gvwy";
        case StrategyKind::Shvr: return "shvr";
        case StrategyKind::Przi: return "przi";
        case StrategyKind::Prsh: return "prsh";
        case StrategyKind::Iprzi: return "iprzi";
    }
    return "?";
}

StrategyKind strategy_from_name(const std::string& name) {
    if (name == "ziu") return StrategyKind::Ziu;
    if (name == "zic") return StrategyKind::Zic;
    if (name == "gvwy") return StrategyKind::Gvwy;
    if (name == "shvr") return StrategyKind::Shvr;
    if (name == "przi") return StrategyKind::Przi;
    if (name == "prsh") return StrategyKind::Prsh;
    if (name == "iprzi") return StrategyKind::Iprzi;
    throw std::invalid_argument("unknown strategy: " + name);
}

Price shvr_bid_price(const TopOfBook& top, Price limit, Price tick, Price lo_seed) {
    const Price base = top.bid ? top.bid->price + tick : lo_seed;
    return std::min(base, limit);
}

Price shvr_ask_price(const TopOfBook& top, Price limit, Price tick, Price hi_seed) {
    const Price base = top.ask ? top.ask->price - tick : hi_seed;
    return std::max(base, limit);
}

namespace {
bool przi_family(StrategyKind k) {
    return k == StrategyKind::Przi || k == StrategyKind::Prsh || k == StrategyKind::Iprzi;
}

std::string trader_name(Side side, int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%02d", side == Side::Bid ? 'B' : 'S', index);
    return buf;
}

double draw_range_coeff(std::mt19937_64& rng) {
    // U(1,10)^0.5: biased toward cautious guesses
    return std::sqrt(std::uniform_real_distribution<double>(1.0, 10.0)(rng));
}
}  // namespace

Trader::Trader(int index, Side side, const TraderSpec& spec, const MarketParams& params,
               std::uint64_t seed)
    : index_(index),
      side_(side),
      name_(trader_name(side, index)),
      spec_(spec),
      params_(params),
      rng_(seed),
      bounds_(side, przi_family(spec.kind) ? draw_range_coeff(rng_) : 2.0, params.tick,
              params.price_cap,
              side == Side::Bid ? params.pmin_policy : BuyerPminPolicy::Heuristic) {
    if (params_.shvr_lo_seed <= 0) params_.shvr_lo_seed = params_.tick;
    if (params_.shvr_hi_seed <= 0) params_.shvr_hi_seed = params_.price_cap;
    if (spec_.kind == StrategyKind::Prsh) {
        prsh_ = std::make_unique<PrshState>(spec_.prsh, rng_);
        live_s_ = prsh_->active_strategy();
    } else if (spec_.kind == StrategyKind::Przi) {
        live_s_ = spec_.fixed_s;
    }
}

void Trader::assign(Price limit) {
    if (limit < params_.tick) throw std::invalid_argument("assignment below one tick");
    limit_ = limit;
    has_assignment_ = true;
    bounds_.on_assignment(limit);
}

Price Trader::uniform_price(Price lo, Price hi) {
    const Price t = params_.tick;
    std::uniform_int_distribution<Price> d(lo / t, hi / t);
    return d(rng_) * t;
}

std::optional<Price> Trader::quote_price(const QuoteContext& ctx, LutCache& cache) {
    if (!has_assignment_) return std::nullopt;
    switch (spec_.kind) {
        case StrategyKind::Ziu:
            return uniform_price(params_.tick, params_.price_cap);
        case StrategyKind::Zic:
            if (side_ == Side::Bid) return uniform_price(params_.tick, limit_);
            if (limit_ > params_.price_cap)
                throw std::logic_error("zic seller limit above the market price cap");
            return uniform_price(limit_, params_.price_cap);
        case StrategyKind::Gvwy:
            return limit_;
        case StrategyKind::Shvr:
            return side_ == Side::Bid
                       ? shvr_bid_price(ctx.top, limit_, params_.tick, params_.shvr_lo_seed)
                       : shvr_ask_price(ctx.top, limit_, params_.tick, params_.shvr_hi_seed);
        case StrategyKind::Przi:
            return przi_price(spec_.fixed_s, ctx, cache);
        case StrategyKind::Prsh:
            prsh_->advance(ctx.time_s, rng_);
            return przi_price(prsh_->active_strategy(), ctx, cache);
        case StrategyKind::Iprzi: {
            const auto dm = imbalance_delta(ctx.top);
            const double s = dm ? impact_to_strategy(*dm, side_, spec_.impact_gain) : 0.0;
            return przi_price(s, ctx, cache);
        }
    }
    return std::nullopt;
}

Price Trader::przi_price(double s, const QuoteContext& ctx, LutCache& cache) {
    live_s_ = s;
    // Blend target for s < 0: one tick inside the rival best, floored/capped
    // at the limit. With no rival price visible there is nothing to shave, so
    // the target falls back to the trader's own range estimate: the blend
    // then degenerates to quoting the private guess rather than a system
    // constant. SHVR's cold-start seeds are a rule for that strategy only.
    const Price target =
        side_ == Side::Bid
            ? (ctx.top.bid ? std::min(ctx.top.bid->price + params_.tick, limit_)
                           : std::min(bounds_.zic_bound(), limit_))
            : (ctx.top.ask ? std::max(ctx.top.ask->price - params_.tick, limit_)
                           : std::max(bounds_.zic_bound(), limit_));
    const PriceBounds b = quote_bounds(side_, s, limit_, bounds_.zic_bound(), target,
                                       params_.tick, params_.price_cap);
    const LutKey key{LutCache::quantize(s), b.lo, b.hi, params_.tick, side_};
    if (!dist_ || !(key == dist_key_)) {
        dist_ = cache.get_or_build(s, b.lo, b.hi, params_.tick, side_);
        dist_key_ = key;
    }
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    return sample_price(*dist_, u);
}

void Trader::on_trade(Money surplus) {
    profit_ += surplus;
    ++trades_;
    if (prsh_) prsh_->credit(surplus);
}

void Trader::on_rival_quote(Price price) {
    if (przi_family(spec_.kind)) bounds_.on_rival_quote(price);
}

double Trader::current_strategy() const {
    switch (spec_.kind) {
        case StrategyKind::Gvwy: return 1.0;
        case StrategyKind::Shvr: return -1.0;
        case StrategyKind::Przi:
        case StrategyKind::Prsh:
        case StrategyKind::Iprzi: return live_s_;
        default: return 0.0;
    }
}

}  // namespace przisim
