#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmsim/agents.hpp"
#include "mmsim/rng.hpp"

namespace mmsim {

enum class Side : std::uint8_t { Bid, Ask };

// Single-unit limit order.
struct Order {
  int agent = 0;
  Side side = Side::Bid;
  double price = 0.0;
  int asset = 1;
};

// Per-asset book, rebuilt every step. After sort_book the bids are ranked by
// descending and the asks by ascending price.
struct OrderBook {
  std::vector<Order> bids;
  std::vector<Order> asks;

  std::optional<double> best_bid() const {
    return bids.empty() ? std::nullopt : std::optional<double>(bids.front().price);
  }
  std::optional<double> best_ask() const {
    return asks.empty() ? std::nullopt : std::optional<double>(asks.front().price);
  }
};

struct Trade {
  int buyer = 0;
  int seller = 0;
  double price = 0.0;  // always the matched ask price
};

struct MatchOutcome {
  int n_b = 0;  // bidders posted
  int n_a = 0;  // askers posted
  int n_t = 0;  // executed transactions
  std::optional<double> p_last;  // ask price of the last transaction
  std::vector<Trade> trades;
};

// Shuffles each side before the stable price sort so that equal-price orders
// carry no systematic agent-index priority.
void sort_book(OrderBook& book, rng::Stream& tiebreak);

// Pairs best bid with best ask while the bid strictly exceeds the ask; each
// pair trades one unit at the ask price.
MatchOutcome match(const OrderBook& book);

// Applies trades to portfolios. Preconditions (buyer can pay, seller holds a
// unit) are guaranteed by order feasibility; violations are internal faults.
void settle(std::span<const Trade> trades, std::vector<Trader>& traders, int asset);

// Signed count of unsatisfied orders on the dominant side:
// N_b - N_T when N_b >= N_a, else -(N_a - N_T).
long imbalance(const MatchOutcome& outcome);

struct PriceUpdate {
  double p1_next = 0.0;
  double p2_next = 0.0;
  bool floored1 = false;
  bool floored2 = false;
};

// Next global prices: each asset restarts from its last trade price (or
// carries the current price on a trade-less step) shifted by delta times the
// other asset's imbalance, floored at price_floor.
PriceUpdate update_global_prices(double p1_now, double p2_now, const MatchOutcome& outcome1,
                                 const MatchOutcome& outcome2, double delta,
                                 double price_floor = 1.0);

}  // namespace mmsim
