#pragma once

#include <optional>

#include "przisim/order_book.hpp"
#include "przisim/types.hpp"

namespace przisim {

// Quantity-weighted blend of the best bid and ask:
//   p_mu = (p_ask * q_bid + p_bid * q_ask) / (q_bid + q_ask).
// Reduces to the mid-price when the top-of-book quantities balance.
std::optional<double> micro_price(const TopOfBook& top);

// Imbalance signal: micro-price minus mid-price. Positive when visible
// demand outweighs supply at the top of the book.
std::optional<double> imbalance_delta(const TopOfBook& top);

// Odd, bounded map x -> x/(1+|x|); output in (-1,+1).
double saturate(double x);

// Strategy value from the imbalance signal. Excess demand makes buyers more
// urgent and sellers more relaxed, so the seller output is the exact
// negation of the buyer output.
double impact_to_strategy(double delta_m, Side trader_side, double gain);

enum class OpinionMap { Identity, Sigmoid };

// Strategy value from an opinion in [-1,+1]: identity for sellers, negated
// identity for buyers. The sigmoid mode keeps the signs and the +/-1
// endpoints but saturates toward the extremes (gain > 0 controls steepness).
double opinion_to_strategy(double omega, Side trader_side,
                           OpinionMap map = OpinionMap::Identity, double gain = 2.0);

}  // namespace przisim
