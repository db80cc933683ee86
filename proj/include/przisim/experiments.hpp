#pragma once

#include <string>
#include <vector>

#include "przisim/config.hpp"
#include "przisim/metrics.hpp"
#include "przisim/session.hpp"

namespace przisim {

// Worker count for independent sessions: PRZISIM_WORKERS when set, else the
// OpenMP default.
int worker_count();

// ---- session experiments ----------------------------------------------

struct RunSummary {
    std::uint64_t seed = 0;
    std::int64_t trades = 0;
    Money pi_buyers = 0;
    Money pi_sellers = 0;
    Money pi_total = 0;
    // terminal smoothed strategy per trader (buyers then sellers)
    std::vector<double> terminal_s;
    int n_buyers = 0;
    double relaxed_fraction = 0.0;   // terminal s < 0, over all traders
    double profit_rate_mean = 0.0;   // extraction rate (currency/s) over the final window
    double profit_rate_std = 0.0;
};

// Smoothed s-hat series per trader (columns of the sampled strategy matrix).
std::vector<std::vector<double>> smoothed_strategy(const MetricsSeries& series, int window);

RunSummary summarize_run(const Session& session);

// Runs one session; when out_dir is non-empty writes trade_tape.csv (if
// enabled), strategy_vector.csv, s_hat.csv, profits.csv, prsh_log.csv and
// summary.txt into it.
RunSummary run_session_experiment(const MarketConfig& cfg, LutCache& cache, std::uint64_t seed,
                                  const std::string& out_dir);

// cfg.runs IID repetitions with seeds derived from cfg.seed, executed in
// parallel. Each run writes into <out_dir>/run_<i>/ when out_dir is set.
std::vector<RunSummary> run_session_batch(const MarketConfig& cfg, LutCache& cache,
                                          const std::string& out_dir);

// ---- fitness landscape --------------------------------------------------

struct LandscapeResult {
    std::vector<double> s;                     // grid values, ascending
    std::vector<double> pps_mean;              // averaged over seeds
    std::vector<std::vector<double>> pps_by_seed;  // [seed][grid]
};

// One adapting trader holds a grid of regularly spaced strategies and
// evaluates each for eval_period_s; everyone else plays the configured fixed
// strategies. Repeated over `seeds` sessions in parallel.
LandscapeResult run_landscape(const LandscapeConfig& cfg, LutCache& cache);

void write_landscape_csv(const LandscapeResult& r, const std::string& path);

// ---- imbalance-impact scenario ------------------------------------------

struct ImpactResult {
    std::vector<double> time_s;
    std::vector<Price> quote;
    std::vector<double> s;
    WelchResult welch;     // pre vs post windows around the first scripted event
    double event_time_s = 0.0;
};

// One imbalance-sensitive buyer quoting against a scripted synthetic book.
ImpactResult run_impact_scenario(const ImpactScenarioConfig& cfg, LutCache& cache,
                                 std::size_t window = 1000);

void write_impact_outputs(const ImpactResult& r, const std::string& out_dir);

// ---- relaxed-strategy / profit relationship ------------------------------

struct RelaxedProfitRow {
    double relaxed_fraction = 0.0;
    double profit_rate_mean = 0.0;
    double profit_rate_std = 0.0;
};

struct RelaxedProfitResult {
    std::vector<RelaxedProfitRow> rows;
    std::optional<LinearFit> fit;  // empty when degenerate (< 2 runs or constant x)
};

RelaxedProfitResult relaxed_fraction_vs_profit(const std::vector<RunSummary>& runs);

void write_relaxed_profit_csv(const RelaxedProfitResult& r, const std::string& path);

// ---- output helpers -------------------------------------------------------

void write_trade_tape_header(std::ostream& os);
void write_trade_tape_row(std::ostream& os, const Trade& t, const Session& session);
void write_strategy_csv(const MetricsSeries& series, const std::string& path);
void write_shat_csv(const MetricsSeries& series, int window, const std::string& path);
void write_profits_csv(const MetricsSeries& series, const std::string& path);
void write_prsh_log_csv(const std::vector<PrshLogRow>& rows, const Session& session,
                        const std::string& path);
void write_run_summary(const RunSummary& s, const MarketConfig& cfg, const std::string& path);

}  // namespace przisim
