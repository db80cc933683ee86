#pragma once

#include <functional>
#include <random>
#include <vector>

#include "przisim/config.hpp"
#include "przisim/metrics.hpp"
#include "przisim/order_book.hpp"
#include "przisim/traders.hpp"
#include "przisim/types.hpp"

namespace przisim {

struct MatchResult {
    enum class Kind { Traded, Rested, Rejected } kind = Kind::Rejected;
    std::optional<Trade> trade;
    const char* reason = nullptr;
};

struct PrshLogRow {
    double time_s = 0.0;
    int trader = -1;
    double active_s = 0.0;
    double elite_s = 0.0;
    double elite_pps = 0.0;
};

// One trading session: a clock stepping at a fixed rate, a population of
// traders, and the order book. Each step one trader, chosen uniformly at
// random, is asked for a quote; the quote is matched or rested; trades pay
// both counterparties their surplus and trigger fresh assignments from the
// (box) schedule. Deterministic given its seed; owns no shared state except
// the distribution cache, which is read-mostly and thread-safe.
class Session {
public:
    Session(const MarketConfig& cfg, LutCache& cache, std::uint64_t seed);

    void set_trade_sink(std::function<void(const Trade&)> sink) { trade_sink_ = std::move(sink); }
    void keep_trade_tape(bool keep) { keep_tape_ = keep; }

    void step();
    void run();  // all steps, with periodic sampling into the metrics series

    // Validated submission path: rejects quotes from traders without an
    // assignment, on the wrong side, or priced outside [tick, price_cap].
    MatchResult submit_quote(const Quote& q);

    double now() const { return now_; }
    std::int64_t steps_done() const { return step_count_; }
    std::int64_t trade_count() const { return trade_count_; }
    Money pi_buyers() const { return pi_buyers_; }
    Money pi_sellers() const { return pi_sellers_; }
    Money pi_total() const { return pi_buyers_ + pi_sellers_; }

    OrderBook& book() { return book_; }
    const OrderBook& book() const { return book_; }
    std::vector<Trader>& traders() { return traders_; }
    const std::vector<Trader>& traders() const { return traders_; }
    int buyer_count() const { return n_buyers_; }

    const MetricsSeries& series() const { return series_; }
    const std::vector<Trade>& tape() const { return tape_; }
    const std::vector<PrshLogRow>& prsh_log() const { return prsh_log_; }
    const MarketConfig& config() const { return cfg_; }

private:
    void settle(const Quote& incoming, const Quote& standing);
    void take_sample(double t);
    Quote next_quote_from(Trader& tr);

    MarketConfig cfg_;
    LutCache& cache_;
    std::mt19937_64 rng_;
    OrderBook book_;
    std::vector<Trader> traders_;
    int n_buyers_ = 0;

    double now_ = 0.0;
    std::int64_t step_count_ = 0;
    std::uint64_t seq_ = 0;
    std::int64_t trade_count_ = 0;
    Money pi_buyers_ = 0;
    Money pi_sellers_ = 0;

    // Smith alpha accumulators for the current sample window.
    double alpha_ss_ = 0.0;
    std::int64_t alpha_n_ = 0;

    MetricsSeries series_;
    Trade last_trade_;
    std::vector<Trade> tape_;
    bool keep_tape_ = false;
    std::vector<PrshLogRow> prsh_log_;
    std::function<void(const Trade&)> trade_sink_;
};

}  // namespace przisim
