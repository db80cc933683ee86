#include "przisim/order_book.hpp"

#include <cassert>

namespace przisim {

std::optional<double> mid_price(const TopOfBook& top) {
    if (!top.bid || !top.ask) return std::nullopt;
    assert(top.bid->price < top.ask->price);
    return 0.5 * (double(top.bid->price) + double(top.ask->price));
}

OrderBook::OrderBook(int n_traders) : resting_(std::size_t(n_traders)) {}

bool OrderBook::better(Side s, Price a, Price b) const {
    return s == Side::Bid ? a > b : a < b;
}

OrderBook::Outcome OrderBook::submit(const Quote& q) {
    remove(q.trader);  // a new quote replaces the owner's previous one

    const SideBook& opp = sides_[int(opposite(q.side))];
    const bool crosses = opp.best_price &&
        (q.side == Side::Bid ? q.price >= *opp.best_price : q.price <= *opp.best_price);
    if (crosses) {
        Outcome out;
        out.traded = true;
        out.standing = *resting_[opp.best_owner];
        remove(opp.best_owner);
        return out;
    }
    insert(q);
    return {};
}

void OrderBook::insert(const Quote& q) {
    resting_[q.trader] = q;
    SideBook& sb = sides_[int(q.side)];
    if (!sb.best_price || better(q.side, q.price, *sb.best_price)) {
        sb.best_price = q.price;
        sb.best_qty = 1;
        sb.best_owner = q.trader;
    } else if (q.price == *sb.best_price) {
        ++sb.best_qty;
        // earliest arrival keeps ownership of the best
        if (q.seq < resting_[sb.best_owner]->seq) sb.best_owner = q.trader;
    }
}

void OrderBook::remove(int trader) {
    if (!resting_[trader]) return;
    const Quote q = *resting_[trader];
    resting_[trader].reset();
    SideBook& sb = sides_[int(q.side)];
    if (sb.best_price && q.price == *sb.best_price) {
        if (--sb.best_qty == 0 || sb.best_owner == trader) rescan(q.side);
    }
}

void OrderBook::rescan(Side s) {
    SideBook& sb = sides_[int(s)];
    sb.best_price.reset();
    sb.best_qty = 0;
    sb.best_owner = -1;
    for (const auto& r : resting_) {
        if (!r || r->side != s) continue;
        if (!sb.best_price || better(s, r->price, *sb.best_price)) {
            sb.best_price = r->price;
            sb.best_qty = 1;
            sb.best_owner = r->trader;
        } else if (r->price == *sb.best_price) {
            ++sb.best_qty;
            if (r->seq < resting_[sb.best_owner]->seq) sb.best_owner = r->trader;
        }
    }
}

void OrderBook::clear() {
    for (auto& r : resting_) r.reset();
    sides_[0] = {};
    sides_[1] = {};
}

std::optional<BookLevel> OrderBook::best(Side s) const {
    const SideBook& sb = sides_[int(s)];
    if (!sb.best_price) return std::nullopt;
    return BookLevel{*sb.best_price, sb.best_qty};
}

TopOfBook OrderBook::top() const {
    return TopOfBook{best(Side::Bid), best(Side::Ask)};
}

}  // namespace przisim
