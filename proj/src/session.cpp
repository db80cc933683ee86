#include "przisim/session.hpp"

#include <cmath>
#include <limits>

namespace przisim {

namespace {
TraderSpec spec_for(const PopulationConfig& pop, const PrshConfig& prsh, int index_on_side) {
    TraderSpec spec;
    spec.kind = index_on_side < pop.resolved_prsh_count() ? StrategyKind::Prsh : pop.kind;
    if (spec.kind == pop.kind) {
        spec.fixed_s = pop.fixed_s;
        spec.impact_gain = pop.impact_gain;
    }
    spec.prsh = prsh;
    return spec;
}
}  // namespace

Session::Session(const MarketConfig& cfg, LutCache& cache, std::uint64_t seed)
    : cfg_(cfg),
      cache_(cache),
      rng_(derive_seed(seed, 0)),
      book_(cfg.buyers.count + cfg.sellers.count),
      n_buyers_(cfg.buyers.count) {
    series_.sample_interval_s = cfg.sample_interval_s;
    const MarketParams params = cfg.market_params();
    const int total = cfg.buyers.count + cfg.sellers.count;
    traders_.reserve(std::size_t(std::max(total, 0)));
    for (int i = 0; i < cfg.buyers.count; ++i) {
        traders_.emplace_back(i, Side::Bid, spec_for(cfg.buyers, cfg.prsh, i), params,
                              derive_seed(seed, std::uint64_t(i) + 1));
        traders_.back().assign(cfg.buyer_limit);
    }
    for (int i = 0; i < cfg.sellers.count; ++i) {
        const int idx = n_buyers_ + i;
        traders_.emplace_back(idx, Side::Ask, spec_for(cfg.sellers, cfg.prsh, i), params,
                              derive_seed(seed, std::uint64_t(idx) + 1));
        traders_.back().assign(cfg.seller_limit);
    }
}

Quote Session::next_quote_from(Trader& tr) {
    return Quote{tr.index(), tr.side(), 0, now_, ++seq_};
}

void Session::step() {
    ++step_count_;
    now_ = double(step_count_) * cfg_.timestep_s;
    if (traders_.empty()) return;

    const int idx =
        std::uniform_int_distribution<int>(0, int(traders_.size()) - 1)(rng_);
    Trader& tr = traders_[std::size_t(idx)];
    const QuoteContext ctx{book_.top(), now_};
    const auto price = tr.quote_price(ctx, cache_);
    if (!price) return;

    Quote q = next_quote_from(tr);
    q.price = *price;
    const auto outcome = book_.submit(q);

    // every issued quote is visible to same-side rivals
    for (auto& other : traders_) {
        if (other.index() != tr.index() && other.side() == tr.side())
            other.on_rival_quote(*price);
    }
    if (outcome.traded) settle(q, outcome.standing);
}

MatchResult Session::submit_quote(const Quote& q) {
    MatchResult res;
    if (q.trader < 0 || q.trader >= int(traders_.size())) {
        res.reason = "unknown trader";
        return res;
    }
    Trader& tr = traders_[std::size_t(q.trader)];
    if (!tr.has_assignment()) {
        res.reason = "no current assignment";
        return res;
    }
    if (q.side != tr.assignment().side) {
        res.reason = "quote side does not match the assignment";
        return res;
    }
    if (q.price < cfg_.tick || q.price > cfg_.price_cap || q.price % cfg_.tick != 0) {
        res.reason = "price outside [tick, price_cap]";
        return res;
    }
    Quote stamped = q;
    stamped.time_s = now_;
    stamped.seq = ++seq_;
    const auto outcome = book_.submit(stamped);
    if (!outcome.traded) {
        res.kind = MatchResult::Kind::Rested;
        return res;
    }
    settle(stamped, outcome.standing);
    res.kind = MatchResult::Kind::Traded;
    res.trade = last_trade_;
    return res;
}

void Session::settle(const Quote& incoming, const Quote& standing) {
    const bool incoming_is_bid = incoming.side == Side::Bid;
    const Quote& bid = incoming_is_bid ? incoming : standing;
    const Quote& ask = incoming_is_bid ? standing : incoming;
    Trader& buyer = traders_[std::size_t(bid.trader)];
    Trader& seller = traders_[std::size_t(ask.trader)];

    Trade t;
    t.time_s = now_;
    t.price = standing.price;  // the resting quote sets the transaction price
    t.buyer = bid.trader;
    t.seller = ask.trader;
    t.buyer_surplus = buyer_surplus(buyer.limit(), t.price);
    t.seller_surplus = seller_surplus(seller.limit(), t.price);

    ++trade_count_;
    pi_buyers_ += t.buyer_surplus;
    pi_sellers_ += t.seller_surplus;
    buyer.on_trade(t.buyer_surplus);
    seller.on_trade(t.seller_surplus);
    buyer.assign(cfg_.buyer_limit);
    seller.assign(cfg_.seller_limit);

    if (cfg_.p0) {
        const double d = double(t.price) - *cfg_.p0;
        alpha_ss_ += d * d;
        ++alpha_n_;
    }
    last_trade_ = t;
    if (keep_tape_) tape_.push_back(t);
    if (trade_sink_) trade_sink_(t);
}

void Session::take_sample(double t) {
    series_.time_s.push_back(t);
    std::vector<double> svec;
    svec.reserve(traders_.size());
    for (const auto& tr : traders_) svec.push_back(tr.current_strategy());
    series_.strategy.push_back(std::move(svec));
    series_.pi_buyers.push_back(pi_buyers_);
    series_.pi_sellers.push_back(pi_sellers_);
    series_.pi_total.push_back(pi_buyers_ + pi_sellers_);
    series_.trades.push_back(trade_count_);
    if (cfg_.p0 && alpha_n_ > 0) {
        series_.alpha_pct.push_back(100.0 * std::sqrt(alpha_ss_ / double(alpha_n_)) / *cfg_.p0);
    } else {
        series_.alpha_pct.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    alpha_ss_ = 0.0;
    alpha_n_ = 0;

    for (const auto& tr : traders_) {
        if (const PrshState* st = tr.prsh()) {
            prsh_log_.push_back(
                PrshLogRow{t, tr.index(), st->active_strategy(), st->last_elite(),
                           st->last_elite_pps()});
        }
    }
}

void Session::run() {
    const std::int64_t steps = cfg_.total_steps();
    const double interval = cfg_.sample_interval_s;
    std::int64_t next_sample = 1;
    for (std::int64_t i = 0; i < steps; ++i) {
        step();
        while (now_ + 1e-7 >= double(next_sample) * interval &&
               double(next_sample) * interval <= cfg_.duration_s + 1e-7) {
            take_sample(double(next_sample) * interval);
            ++next_sample;
        }
    }
}

}  // namespace przisim
