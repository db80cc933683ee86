#include "przisim/market_signals.hpp"

#include <algorithm>
#include <cmath>

namespace przisim {

std::optional<double> micro_price(const TopOfBook& top) {
    if (!top.bid || !top.ask) return std::nullopt;
    const double qb = double(top.bid->quantity);
    const double qa = double(top.ask->quantity);
    return (double(top.ask->price) * qb + double(top.bid->price) * qa) / (qb + qa);
}

std::optional<double> imbalance_delta(const TopOfBook& top) {
    const auto mu = micro_price(top);
    const auto mid = mid_price(top);
    if (!mu || !mid) return std::nullopt;
    return *mu - *mid;
}

double saturate(double x) { return x / (1.0 + std::abs(x)); }

double impact_to_strategy(double delta_m, Side trader_side, double gain) {
    const double s = saturate(gain * delta_m);
    return trader_side == Side::Bid ? s : -s;
}

double opinion_to_strategy(double omega, Side trader_side, OpinionMap map, double gain) {
    omega = std::clamp(omega, -1.0, 1.0);
    double s = omega;
    if (map == OpinionMap::Sigmoid) s = std::tanh(gain * omega) / std::tanh(gain);
    return trader_side == Side::Ask ? s : -s;
}

}  // namespace przisim
