#pragma once

#include "przisim/types.hpp"

#include <optional>
#include <vector>

namespace przisim {

// Mid-price (p_bid* + p_ask*)/2; undefined when either side is empty.
std::optional<double> mid_price(const TopOfBook& top);

// Best-bid/best-ask book with at most one resting quote per trader.
//
// An incoming quote first replaces any previous quote from the same owner.
// If it crosses the opposite best it trades at the *standing* quote's price
// (owner chosen by price, then arrival order); otherwise it rests. Between
// submissions the book is never crossed: best_bid < best_ask.
class OrderBook {
public:
    explicit OrderBook(int n_traders);

    struct Outcome {
        bool traded = false;
        Quote standing;  // the resting quote that was hit (valid when traded)
    };

    // Caller has validated the quote (owner, side, price range).
    Outcome submit(const Quote& q);

    void remove(int trader);
    void clear();

    // Aggregate quantity at the best price on one side.
    std::optional<BookLevel> best(Side s) const;
    TopOfBook top() const;

    const std::optional<Quote>& resting(int trader) const { return resting_[trader]; }

private:
    struct SideBook {
        std::optional<Price> best_price;
        std::int64_t best_qty = 0;
        int best_owner = -1;  // earliest-arrived quote at the best price
    };

    bool better(Side s, Price a, Price b) const;  // a strictly better than b on side s
    void insert(const Quote& q);
    void rescan(Side s);

    std::vector<std::optional<Quote>> resting_;
    SideBook sides_[2];
};

}  // namespace przisim
