#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "mmsim/book.hpp"

using namespace mmsim;

namespace {

OrderBook make_book(const std::vector<double>& bid_prices, const std::vector<double>& ask_prices) {
  OrderBook book;
  int agent = 0;
  for (double p : bid_prices) book.bids.push_back({agent++, Side::Bid, p, 1});
  for (double p : ask_prices) book.asks.push_back({agent++, Side::Ask, p, 1});
  auto rng = rng::derive(1, rng::Tag::TieBreak, 0, 1);
  sort_book(book, rng);
  return book;
}

// Independent matching oracle: sort prices, pair off the fronts, count
// strict crossings. Mirrors the rule, not the implementation.
int oracle_match_count(std::vector<double> bids, std::vector<double> asks) {
  std::sort(bids.begin(), bids.end(), std::greater<double>());
  std::sort(asks.begin(), asks.end());
  int n = 0;
  for (std::size_t k = 0; k < std::min(bids.size(), asks.size()); ++k) {
    if (bids[k] > asks[k]) {
      ++n;
    } else {
      break;
    }
  }
  return n;
}

std::vector<Trader> make_traders(int n, double money, long q) {
  std::vector<Trader> traders(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    traders[static_cast<std::size_t>(i)].id = i;
    traders[static_cast<std::size_t>(i)].money = money;
    traders[static_cast<std::size_t>(i)].q1 = q;
    traders[static_cast<std::size_t>(i)].q2 = q;
  }
  return traders;
}

}  // namespace

TEST_SUITE("book") {

TEST_CASE("three against three") {
  const OrderBook book = make_book({510.0, 505.0, 500.0}, {498.0, 503.0, 507.0});
  const MatchOutcome out = match(book);
  CHECK(out.n_b == 3);
  CHECK(out.n_a == 3);
  CHECK(out.n_t == 2);
  REQUIRE(out.p_last.has_value());
  CHECK(*out.p_last == 503.0);
  CHECK(out.trades[0].price == 498.0);
  CHECK(out.trades[1].price == 503.0);
}

TEST_CASE("equal best prices do not trade") {
  const OrderBook book = make_book({500.0, 495.0}, {500.0, 505.0});
  const MatchOutcome out = match(book);
  CHECK(out.n_t == 0);
  CHECK(!out.p_last.has_value());
}

TEST_CASE("empty side yields no trades") {
  const OrderBook only_bids = make_book({510.0, 505.0}, {});
  CHECK(match(only_bids).n_t == 0);
  const OrderBook empty = make_book({}, {});
  const MatchOutcome out = match(empty);
  CHECK(out.n_t == 0);
  CHECK(out.n_b == 0);
  CHECK(out.n_a == 0);
}

TEST_CASE("book sorting ranks bids descending and asks ascending") {
  auto rng = rng::derive(3, rng::Tag::TieBreak, 5, 2);
  OrderBook book;
  for (int i = 0; i < 40; ++i) {
    book.bids.push_back({i, Side::Bid, rng.uniform(480.0, 520.0), 1});
    book.asks.push_back({100 + i, Side::Ask, rng.uniform(480.0, 520.0), 1});
  }
  sort_book(book, rng);
  CHECK(std::is_sorted(book.bids.begin(), book.bids.end(),
                       [](const Order& a, const Order& b) { return a.price > b.price; }));
  CHECK(std::is_sorted(book.asks.begin(), book.asks.end(),
                       [](const Order& a, const Order& b) { return a.price < b.price; }));
}

TEST_CASE("equal-price priority depends on the tie-break stream") {
  OrderBook a, b;
  for (int i = 0; i < 12; ++i) {
    a.bids.push_back({i, Side::Bid, 500.0, 1});
    b.bids.push_back({i, Side::Bid, 500.0, 1});
  }
  auto rng_a = rng::derive(1, rng::Tag::TieBreak, 0, 1);
  auto rng_b = rng::derive(1, rng::Tag::TieBreak, 1, 1);
  sort_book(a, rng_a);
  sort_book(b, rng_b);
  auto ids = [](const OrderBook& book) {
    std::vector<int> out;
    for (const Order& o : book.bids) out.push_back(o.agent);
    return out;
  };
  CHECK(ids(a) != ids(b));  // different steps shuffle differently
}

TEST_CASE("matching agrees with the brute-force oracle on random books") {
  auto rng = rng::derive(2024, rng::Tag::Oracle);
  for (int trial = 0; trial < 20000; ++trial) {
    const int nb = static_cast<int>(rng.uniform_int(11));
    const int na = static_cast<int>(rng.uniform_int(11));
    std::vector<double> bid_prices, ask_prices;
    for (int i = 0; i < nb; ++i) bid_prices.push_back(rng.uniform(490.0, 510.0));
    for (int i = 0; i < na; ++i) ask_prices.push_back(rng.uniform(490.0, 510.0));

    const OrderBook book = make_book(bid_prices, ask_prices);
    const MatchOutcome out = match(book);
    CHECK(out.n_t == oracle_match_count(bid_prices, ask_prices));

    // trade prices are the asks consumed in ascending order
    for (std::size_t k = 1; k < out.trades.size(); ++k) {
      CHECK(out.trades[k].price >= out.trades[k - 1].price);
    }
    for (const Trade& t : out.trades) CHECK(t.buyer != t.seller);
  }
}

TEST_CASE("settlement moves one unit and the money") {
  std::vector<Trader> traders = make_traders(4, 1000.0, 5);
  const std::vector<Trade> trades = {{0, 1, 503.0}};
  settle(trades, traders, 1);
  CHECK(traders[0].money == 497.0);
  CHECK(traders[0].q1 == 6);
  CHECK(traders[1].money == 1503.0);
  CHECK(traders[1].q1 == 4);
  CHECK(traders[0].q2 == 5);  // other asset untouched
}

TEST_CASE("empty settlement is the identity") {
  std::vector<Trader> traders = make_traders(2, 100.0, 1);
  settle(std::vector<Trade>{}, traders, 2);
  CHECK(traders[0].money == 100.0);
  CHECK(traders[1].q2 == 1);
}

TEST_CASE("settlement conserves money and holdings") {
  auto rng = rng::derive(7, rng::Tag::Oracle);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Trader> traders = make_traders(20, 10000.0, 10);
    const double money_before = 20 * 10000.0;
    const long q_before = 20 * 10;

    std::vector<Trade> trades;
    for (int k = 0; k < 30; ++k) {
      const int buyer = static_cast<int>(rng.uniform_int(20));
      int seller = static_cast<int>(rng.uniform_int(20));
      if (seller == buyer) seller = (seller + 1) % 20;
      trades.push_back({buyer, seller, rng.uniform(1.0, 200.0)});
    }
    const int asset = 1 + static_cast<int>(rng.uniform_int(2));
    settle(trades, traders, asset);

    double money_after = 0.0;
    long q_after = 0;
    for (const Trader& t : traders) {
      money_after += t.money;
      q_after += t.holdings(asset);
    }
    CHECK(money_after == doctest::Approx(money_before).epsilon(1e-9));
    CHECK(q_after == q_before);
  }
}

TEST_CASE("settlement precondition violations are internal faults") {
  std::vector<Trader> traders = make_traders(2, 10.0, 0);
  CHECK_THROWS_AS(settle(std::vector<Trade>{{0, 1, 503.0}}, traders, 1), std::logic_error);
  traders = make_traders(2, 10000.0, 0);
  CHECK_THROWS_AS(settle(std::vector<Trade>{{0, 1, 5.0}}, traders, 1), std::logic_error);
}

TEST_CASE("imbalance branches") {
  MatchOutcome out;
  out.n_b = 3;
  out.n_a = 3;
  out.n_t = 2;
  CHECK(imbalance(out) == 1);

  out.n_b = 2;
  out.n_a = 5;
  out.n_t = 2;
  CHECK(imbalance(out) == -3);

  out.n_b = 0;
  out.n_a = 0;
  out.n_t = 0;
  CHECK(imbalance(out) == 0);

  // boundary extension: one empty side
  out.n_b = 4;
  out.n_a = 0;
  out.n_t = 0;
  CHECK(imbalance(out) == 4);
  out.n_b = 0;
  out.n_a = 6;
  out.n_t = 0;
  CHECK(imbalance(out) == -6);
}

TEST_CASE("global price update") {
  MatchOutcome traded;
  traded.n_b = 12;
  traded.n_a = 4;
  traded.n_t = 2;
  traded.p_last = 503.0;

  MatchOutcome quiet;  // no trades
  quiet.n_b = 3;
  quiet.n_a = 8;
  quiet.n_t = 0;

  SUBCASE("uncorrelated prices follow the last trade exactly") {
    const PriceUpdate up = update_global_prices(500.0, 500.0, traded, traded, 0.0);
    CHECK(up.p1_next == 503.0);
    CHECK(up.p2_next == 503.0);
  }
  SUBCASE("cross term shifts by delta times the other imbalance") {
    MatchOutcome other;
    other.n_b = 12;
    other.n_a = 2;
    other.n_t = 2;  // omega = 10
    const PriceUpdate up = update_global_prices(500.0, 500.0, traded, other, 0.03);
    CHECK(up.p1_next == doctest::Approx(503.3).epsilon(1e-12));
  }
  SUBCASE("trade-less book carries the current price as base") {
    MatchOutcome other;
    other.n_b = 1;
    other.n_a = 6;
    other.n_t = 1;  // omega = -5
    const PriceUpdate up = update_global_prices(800.0, 500.0, quiet, other, 0.03);
    CHECK(up.p1_next == doctest::Approx(800.0 - 0.15).epsilon(1e-12));
  }
  SUBCASE("floor clamps and flags") {
    MatchOutcome other;
    other.n_b = 0;
    other.n_a = 200;
    other.n_t = 0;  // omega = -200
    const PriceUpdate up = update_global_prices(3.0, 500.0, quiet, other, 0.03, 1.0);
    CHECK(up.p1_next == 1.0);
    CHECK(up.floored1);
    CHECK(!up.floored2);
  }
  SUBCASE("raising the other imbalance never lowers the price") {
    double prev = -1.0;
    for (long omega = -50; omega <= 50; ++omega) {
      MatchOutcome other;
      other.n_b = static_cast<int>(std::max(0l, omega));
      other.n_a = static_cast<int>(std::max(0l, -omega));
      other.n_t = 0;
      REQUIRE(imbalance(other) == omega);
      const PriceUpdate up = update_global_prices(500.0, 500.0, traded, other, 0.03);
      CHECK(up.p1_next >= prev);
      prev = up.p1_next;
    }
  }
}

}  // TEST_SUITE
