#include "przisim/prsh.hpp"

#include <algorithm>
#include <stdexcept>

namespace przisim {

std::vector<double> genesis(GenesisMode mode, int k, double constant_value,
                            std::mt19937_64& rng) {
    if (k < 2) throw std::invalid_argument("genesis: k must be >= 2");
    std::vector<double> out(static_cast<std::size_t>(k));
    switch (mode) {
        case GenesisMode::Uniform: {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (auto& s : out) s = u(rng);
            break;
        }
        case GenesisMode::Constant:
            std::fill(out.begin(), out.end(), std::clamp(constant_value, -1.0, 1.0));
            break;
        case GenesisMode::Grid:
            for (int i = 0; i < k; ++i) out[std::size_t(i)] = 2.0 * i / double(k - 1) - 1.0;
            break;
    }
    return out;
}

double mutate(double elite, double sigma, std::mt19937_64& rng) {
    if (sigma <= 0.0) return std::clamp(elite, -1.0, 1.0);
    std::normal_distribution<double> n(0.0, sigma);
    return std::clamp(elite + n(rng), -1.0, 1.0);
}

std::size_t rank_and_select(const std::vector<StrategySlot>& slots, double tie_eps,
                            std::mt19937_64& rng) {
    std::size_t best = 0, second = slots.size();
    for (std::size_t i = 1; i < slots.size(); ++i) {
        if (slots[i].pps() > slots[best].pps()) {
            second = best;
            best = i;
        } else if (second == slots.size() || slots[i].pps() > slots[second].pps()) {
            second = i;
        }
    }
    if (second < slots.size() &&
        std::abs(slots[best].pps() - slots[second].pps()) < tie_eps) {
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) return second;
    }
    return best;
}

PrshState::PrshState(const PrshConfig& cfg, std::mt19937_64& rng) : cfg_(cfg) {
    const auto values = genesis(cfg.genesis, cfg.k, cfg.genesis_value, rng);
    slots_.reserve(values.size());
    for (double s : values) slots_.push_back(StrategySlot{s, 0, 0.0});
    last_elite_ = slots_[0].s;
}

void PrshState::advance(double now_s, std::mt19937_64& rng) {
    if (frozen_) return;
    if (!started_) {
        started_ = true;
        active_since_ = now_s;
        return;
    }
    const double elapsed = now_s - active_since_;
    if (elapsed < cfg_.eval_period_s) return;

    slots_[active_].elapsed_s = elapsed;
    if (active_ + 1 < slots_.size()) {
        ++active_;
        active_since_ = now_s;
        return;
    }
    if (cfg_.freeze_after_first_cycle) {
        frozen_ = true;
        return;
    }
    climb(now_s, rng);
}

void PrshState::climb(double now_s, std::mt19937_64& rng) {
    const std::size_t elite_idx = rank_and_select(slots_, cfg_.tie_eps_pps, rng);
    const double elite = slots_[elite_idx].s;
    last_elite_ = elite;
    last_elite_pps_ = slots_[elite_idx].pps();

    slots_[0] = StrategySlot{elite, 0, 0.0};  // the elite survives unchanged
    for (std::size_t i = 1; i < slots_.size(); ++i)
        slots_[i] = StrategySlot{mutate(elite, cfg_.sigma, rng), 0, 0.0};

    active_ = 0;
    active_since_ = now_s;
    ++cycles_;
}

void PrshState::credit(Money surplus) {
    if (frozen_) return;
    slots_[active_].profit += surplus;
}

}  // namespace przisim
