#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "przisim/prsh.hpp"
#include "przisim/traders.hpp"
#include "przisim/types.hpp"

namespace przisim {

// One side of the market. The first prsh_count traders adapt via the
// hill-climber; the rest play `kind`.
struct PopulationConfig {
    int count = 30;
    StrategyKind kind = StrategyKind::Zic;
    double fixed_s = 0.0;      // przi
    double impact_gain = 4.0;  // iprzi
    int prsh_count = -1;       // -1: count if kind == prsh, else 0

    int resolved_prsh_count() const {
        if (prsh_count >= 0) return prsh_count;
        return kind == StrategyKind::Prsh ? count : 0;
    }
};

struct MarketConfig {
    PopulationConfig buyers{30, StrategyKind::Zic};
    PopulationConfig sellers{30, StrategyKind::Zic};
    Price buyer_limit = 100;  // box schedule: every buyer shares this limit
    Price seller_limit = 60;
    Price tick = 1;
    Price price_cap = 500;
    Price shvr_lo_seed = 0;  // 0: tick
    Price shvr_hi_seed = 0;  // 0: price_cap
    double timestep_s = 1.0 / 60.0;
    double duration_s = 0.0;
    double sample_interval_s = 3600.0;
    int smoothing_window = 12;  // samples in the trailing s-hat average
    std::uint64_t seed = 1;
    BuyerPminPolicy pmin_policy = BuyerPminPolicy::Zic;
    PrshConfig prsh;
    int runs = 1;
    std::optional<double> p0;  // enables the Smith alpha series
    bool write_trade_tape = true;
    double final_window_s = 0.0;   // 0: duration / 6
    double hist_bin_width = 0.1;   // terminal-strategy histogram resolution

    MarketParams market_params() const {
        return MarketParams{tick, price_cap, shvr_lo_seed, shvr_hi_seed, pmin_policy};
    }
    std::int64_t total_steps() const;
    double resolved_final_window() const {
        return final_window_s > 0.0 ? final_window_s : duration_s / 6.0;
    }
};

struct LandscapeConfig {
    MarketConfig market;
    Side adaptive_side = Side::Ask;
    double grid_step = 0.1;
    double eval_period_s = 600.0;
    int seeds = 5;
    double slack_s = 120.0;

    int grid_points() const;
};

struct ImpactEvent {
    double time_s = 0.0;
    Side side = Side::Bid;
    std::int64_t qty_delta = 0;
};

// Scripted-book scenario: one imbalance-sensitive buyer quoting against a
// fixed top-of-book whose quantities the script perturbs.
struct ImpactScenarioConfig {
    Price bid_price = 100;
    Price ask_price = 110;
    std::int64_t bid_qty = 1;
    std::int64_t ask_qty = 1;
    Price buyer_limit = 150;
    double gain = 4.0;
    double timestep_s = 0.005;
    double duration_s = 25.0;
    Price tick = 1;
    Price price_cap = 500;
    std::uint64_t seed = 1;
    std::vector<ImpactEvent> script;
};

struct RqaJobConfig {
    std::string input;  // trajectory CSV: time_h, s_0, ...
    double eps = 0.0;   // 0: derive from component_tol and the dimension count
    double component_tol = 0.05;
    int v_min = 2;
    int downsample = 1;
    bool write_cells_csv = true;
};

// Flat key = value sections.
using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

RawConfig parse_config_file(const std::string& path);
RawConfig parse_config_text(const std::string& text);

MarketConfig load_market_config(const std::string& path);
LandscapeConfig load_landscape_config(const std::string& path);
ImpactScenarioConfig load_impact_config(const std::string& path);
RqaJobConfig load_rqa_config(const std::string& path);

std::vector<ImpactEvent> load_impact_script(const std::string& path);

// Throws with a descriptive message on any violation; called before any
// simulation starts.
void validate(const MarketConfig& cfg);

}  // namespace przisim
