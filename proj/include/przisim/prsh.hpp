#pragma once

#include <random>
#include <vector>

#include "przisim/types.hpp"

namespace przisim {

enum class GenesisMode { Uniform, Constant, Grid };

struct PrshConfig {
    int k = 4;
    double eval_period_s = 7200.0;
    double sigma = 0.01;           // mutation stddev
    double tie_eps_pps = 1e-3;     // near-tie threshold on profit-per-second
    GenesisMode genesis = GenesisMode::Uniform;
    double genesis_value = 0.0;    // Constant mode
    bool freeze_after_first_cycle = false;  // landscape mapping: evaluate once, never mutate
};

// Initial strategy set. Grid mode spaces k values evenly over [-1,+1]:
// s_i = 2i/(k-1) - 1.
std::vector<double> genesis(GenesisMode mode, int k, double constant_value, std::mt19937_64& rng);

// Elite + N(0, sigma), truncated to [-1,+1]. sigma <= 0 returns the elite.
double mutate(double elite, double sigma, std::mt19937_64& rng);

struct StrategySlot {
    double s = 0.0;
    Money profit = 0;
    double elapsed_s = 0.0;

    double pps() const { return elapsed_s > 0.0 ? double(profit) / elapsed_s : 0.0; }
};

// Index of the fittest slot by profit-per-second. When the top two are
// within tie_eps of each other, one of the two is chosen at random.
std::size_t rank_and_select(const std::vector<StrategySlot>& slots, double tie_eps,
                            std::mt19937_64& rng);

// Evaluate-rank-mutate loop over a set of k candidate strategies. Each
// strategy trades exclusively for at least eval_period_s; once all k are
// scored the elite is copied into slot 0, the other k-1 slots become fresh
// mutants of it, and the cycle restarts. A full cycle therefore takes at
// least k * eval_period_s seconds.
class PrshState {
public:
    PrshState(const PrshConfig& cfg, std::mt19937_64& rng);

    double active_strategy() const { return slots_[active_].s; }
    std::size_t active_index() const { return active_; }

    // Advance the evaluation clock to now_s; may rotate to the next strategy
    // or complete a cycle. Call before using active_strategy() to quote.
    void advance(double now_s, std::mt19937_64& rng);

    // Surplus earned while the active strategy was trading.
    void credit(Money surplus);

    const std::vector<StrategySlot>& slots() const { return slots_; }
    int completed_cycles() const { return cycles_; }
    bool frozen() const { return frozen_; }
    double last_elite() const { return last_elite_; }
    double last_elite_pps() const { return last_elite_pps_; }

private:
    void climb(double now_s, std::mt19937_64& rng);

    PrshConfig cfg_;
    std::vector<StrategySlot> slots_;
    std::size_t active_ = 0;
    double active_since_ = 0.0;
    bool started_ = false;
    bool frozen_ = false;
    int cycles_ = 0;
    double last_elite_ = 0.0;
    double last_elite_pps_ = 0.0;
};

}  // namespace przisim
