#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace przisim {

// Prices are integer currency units and always multiples of the market tick
// size; the smallest quotable price is one tick.
using Price = std::int64_t;
using Money = std::int64_t;

enum class Side : std::uint8_t { Bid = 0, Ask = 1 };

constexpr Side opposite(Side s) { return s == Side::Bid ? Side::Ask : Side::Bid; }
constexpr const char* side_name(Side s) { return s == Side::Bid ? "bid" : "ask"; }

// A buy-or-sell intention for one unit at a limit price.
struct Quote {
    int trader = -1;
    Side side = Side::Bid;
    Price price = 0;
    double time_s = 0.0;
    std::uint64_t seq = 0;  // arrival order; breaks same-price ties deterministically
};

struct Trade {
    double time_s = 0.0;
    Price price = 0;
    int buyer = -1;
    int seller = -1;
    Money buyer_surplus = 0;   // buyer limit - price
    Money seller_surplus = 0;  // price - seller limit
};

// Private instruction to buy or sell one unit at no worse than `limit`.
struct Assignment {
    Side side = Side::Bid;
    Price limit = 0;
};

constexpr Money buyer_surplus(Price limit, Price paid) { return limit - paid; }
constexpr Money seller_surplus(Price limit, Price received) { return received - limit; }

struct BookLevel {
    Price price = 0;
    std::int64_t quantity = 0;
};

// Best bid/ask snapshot handed to traders when they are asked to quote.
struct TopOfBook {
    std::optional<BookLevel> bid;
    std::optional<BookLevel> ask;
};

// splitmix64; used to derive independent per-trader / per-session seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

}  // namespace przisim
