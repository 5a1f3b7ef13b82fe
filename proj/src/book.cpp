#include "mmsim/book.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mmsim {

namespace {

void shuffle_orders(std::vector<Order>& orders, rng::Stream& rng) {
  for (std::size_t i = orders.size(); i > 1; --i) {
    std::size_t j = rng.uniform_int(i);
    std::swap(orders[i - 1], orders[j]);
  }
}

}  // namespace

void sort_book(OrderBook& book, rng::Stream& tiebreak) {
  shuffle_orders(book.bids, tiebreak);
  shuffle_orders(book.asks, tiebreak);
  std::stable_sort(book.bids.begin(), book.bids.end(),
                   [](const Order& a, const Order& b) { return a.price > b.price; });
  std::stable_sort(book.asks.begin(), book.asks.end(),
                   [](const Order& a, const Order& b) { return a.price < b.price; });
}

MatchOutcome match(const OrderBook& book) {
  MatchOutcome out;
  out.n_b = static_cast<int>(book.bids.size());
  out.n_a = static_cast<int>(book.asks.size());

  const std::size_t pairs = std::min(book.bids.size(), book.asks.size());
  for (std::size_t k = 0; k < pairs; ++k) {
    const Order& bid = book.bids[k];
    const Order& ask = book.asks[k];
    if (!(bid.price > ask.price)) break;  // strict crossing only
    out.trades.push_back({bid.agent, ask.agent, ask.price});
  }
  out.n_t = static_cast<int>(out.trades.size());
  if (out.n_t > 0) out.p_last = out.trades.back().price;
  return out;
}

void settle(std::span<const Trade> trades, std::vector<Trader>& traders, int asset) {
  for (const Trade& trade : trades) {
    Trader& buyer = traders[static_cast<std::size_t>(trade.buyer)];
    Trader& seller = traders[static_cast<std::size_t>(trade.seller)];
    if (buyer.money < trade.price) {
      throw std::logic_error("settle: buyer " + std::to_string(trade.buyer) +
                             " cannot pay " + std::to_string(trade.price));
    }
    if (seller.holdings(asset) < 1) {
      throw std::logic_error("settle: seller " + std::to_string(trade.seller) +
                             " holds no unit of asset " + std::to_string(asset));
    }
    buyer.money -= trade.price;
    buyer.holdings(asset) += 1;
    seller.money += trade.price;
    seller.holdings(asset) -= 1;
  }
}

long imbalance(const MatchOutcome& outcome) {
  if (outcome.n_b >= outcome.n_a) return static_cast<long>(outcome.n_b - outcome.n_t);
  return -static_cast<long>(outcome.n_a - outcome.n_t);
}

PriceUpdate update_global_prices(double p1_now, double p2_now, const MatchOutcome& outcome1,
                                 const MatchOutcome& outcome2, double delta,
                                 double price_floor) {
  PriceUpdate up;
  const double base1 = outcome1.p_last.value_or(p1_now);
  const double base2 = outcome2.p_last.value_or(p2_now);
  up.p1_next = base1 + delta * static_cast<double>(imbalance(outcome2));
  up.p2_next = base2 + delta * static_cast<double>(imbalance(outcome1));
  if (up.p1_next < price_floor) {
    up.p1_next = price_floor;
    up.floored1 = true;
  }
  if (up.p2_next < price_floor) {
    up.p2_next = price_floor;
    up.floored2 = true;
  }
  return up;
}

}  // namespace mmsim
