#include <doctest.h>

#include <vector>

#include "mmsim/agents.hpp"

using namespace mmsim;

namespace {

SimConfig noiseless_cfg() {
  SimConfig cfg;
  cfg.sigma = 0.0;  // forces eps = 0
  return cfg;
}

Trader make_fundamentalist(double theta_i = 0.0) {
  Trader t;
  t.character = Character::Fundamentalist;
  t.theta_i = theta_i;
  t.money = 40000.0;
  t.q1 = t.q2 = 200;
  return t;
}

Trader make_chartist(int window) {
  Trader t;
  t.character = Character::Chartist;
  t.window = window;
  t.money = 40000.0;
  t.q1 = t.q2 = 200;
  return t;
}

rng::Stream test_stream(std::uint64_t k = 0) { return rng::derive(99, rng::Tag::Decision, k); }

}  // namespace

TEST_SUITE("agents") {

TEST_CASE("fundamental values stay put off cadence and with zero variance") {
  SimConfig cfg;
  cfg.t_f = 10;
  auto rng = test_stream();

  FundamentalState fs{3.0, -2.0};
  SUBCASE("off-cadence step") {
    const FundamentalState next = update_fundamental_values(fs, 7, cfg, rng);
    CHECK(next.fv1 == 3.0);
    CHECK(next.fv2 == -2.0);
  }
  SUBCASE("t = 0 never updates") {
    const FundamentalState next = update_fundamental_values(fs, 0, cfg, rng);
    CHECK(next.fv1 == 3.0);
  }
  SUBCASE("zero sigma random walk is frozen") {
    cfg.sigma_1f = cfg.sigma_2f = 0.0;
    FundamentalState cur{0.0, 0.0};
    for (long t = 0; t <= 100; ++t) cur = update_fundamental_values(cur, t, cfg, rng);
    CHECK(cur.fv1 == 0.0);
    CHECK(cur.fv2 == 0.0);
  }
  SUBCASE("on-cadence step moves both values") {
    cfg.sigma_1f = cfg.sigma_2f = 1.0;
    const FundamentalState next = update_fundamental_values(fs, 10, cfg, rng);
    CHECK(next.fv1 != 3.0);
    CHECK(next.fv2 != -2.0);
  }
}

TEST_CASE("fundamentalist expectation") {
  auto rng = test_stream();
  SimConfig cfg = noiseless_cfg();

  SUBCASE("phi = 0 returns the current price") {
    cfg.phi = 0.0;
    const Trader t = make_fundamentalist(12.0);
    CHECK(fundamentalist_expectation(t, 1, 473.0, {50.0, 0.0}, cfg, rng) == 473.0);
  }
  SUBCASE("halfway pull toward the fundamental price") {
    cfg.phi = 0.5;
    cfg.p1_0 = 500.0;
    const Trader t = make_fundamentalist(0.0);
    // p_F = 500 + 20 + 0 = 520
    CHECK(fundamentalist_expectation(t, 1, 500.0, {20.0, 0.0}, cfg, rng) ==
          doctest::Approx(510.0).epsilon(1e-12));
  }
  SUBCASE("fixed point at the initial price") {
    cfg.phi = 0.5;
    const Trader t = make_fundamentalist(0.0);
    CHECK(fundamentalist_expectation(t, 2, cfg.p2_0, {0.0, 0.0}, cfg, rng) == cfg.p2_0);
  }
  SUBCASE("expectation lies between p_now and p_F for phi in (0,1]") {
    const Trader t = make_fundamentalist(5.0);
    for (double phi : {0.1, 0.5, 1.0}) {
      cfg.phi = phi;
      const double p_now = 480.0;
      const double p_fund = cfg.p1_0 + 30.0 + t.theta_i;
      const double e = fundamentalist_expectation(t, 1, p_now, {30.0, 0.0}, cfg, rng);
      CHECK(e >= p_now);
      CHECK(e <= p_fund);
    }
  }
}

TEST_CASE("chartist expectation") {
  auto rng = test_stream();
  SimConfig cfg = noiseless_cfg();

  SUBCASE("flat history is a fixed point") {
    const std::vector<double> history(20, 500.0);
    const Trader t = make_chartist(7);
    CHECK(chartist_expectation(t, 1, history, cfg, rng) == 500.0);
  }
  SUBCASE("linear ramp") {
    // prices 6..10, T = 4: window mean 8, expectation 10 + (2/4) * 2 = 11
    const std::vector<double> history = {6.0, 7.0, 8.0, 9.0, 10.0};
    cfg.kappa = 2.0;
    const Trader t = make_chartist(4);
    CHECK(chartist_expectation(t, 1, history, cfg, rng) == doctest::Approx(11.0).epsilon(1e-12));
  }
  SUBCASE("short history truncates the window") {
    const std::vector<double> history = {9.0, 10.0};
    cfg.kappa = 2.0;
    const Trader t = make_chartist(50);
    // mean over the two available prices is 9.5
    const double expected = 10.0 + 2.0 / 50.0 * (10.0 - 9.5);
    CHECK(chartist_expectation(t, 1, history, cfg, rng) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("trend following sign") {
    const Trader t = make_chartist(5);
    const std::vector<double> rising = {1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> falling = {8, 7, 6, 5, 4, 3, 2, 1};
    CHECK(chartist_expectation(t, 1, rising, cfg, rng) > 8.0);
    CHECK(chartist_expectation(t, 1, falling, cfg, rng) < 1.0);
  }
}

TEST_CASE("status classification") {
  CHECK(decide_status(500.0, 500.0, 15.0) == Status::Holder);
  CHECK(decide_status(520.0, 500.0, 15.0) == Status::Bidder);
  CHECK(decide_status(480.0, 500.0, 15.0) == Status::Asker);
  // boundary equality holds
  CHECK(decide_status(515.0, 500.0, 15.0) == Status::Holder);
  CHECK(decide_status(485.0, 500.0, 15.0) == Status::Holder);
  // partition: exactly one branch fires for arbitrary inputs
  auto rng = test_stream(3);
  for (int i = 0; i < 2000; ++i) {
    const double p = rng.uniform(1.0, 1000.0);
    const double e = p + rng.uniform(-100.0, 100.0);
    const double tau = rng.uniform(0.0, 50.0);
    const Status s = decide_status(e, p, tau);
    const bool bid = e > p + tau, ask = e < p - tau;
    CHECK(s == (bid ? Status::Bidder : ask ? Status::Asker : Status::Holder));
  }
}

TEST_CASE("asker price range") {
  auto rng = test_stream(4);
  for (int i = 0; i < 5000; ++i) {
    const auto price = set_order_price(Status::Asker, 480.0, 500.0, std::nullopt, 0.0, 1.0, rng);
    REQUIRE(price.has_value());
    CHECK(*price >= 480.0);
    CHECK(*price <= 500.0);
  }
}

TEST_CASE("bidder price range with a previous best ask") {
  auto rng = test_stream(5);
  for (int i = 0; i < 5000; ++i) {
    const auto price =
        set_order_price(Status::Bidder, 520.0, 500.0, 505.0, 40000.0, 1.0, rng);
    REQUIRE(price.has_value());
    CHECK(*price >= 505.0);
    CHECK(*price <= 520.0);
  }
}

TEST_CASE("bidder without a previous ask anchors at the current price") {
  auto rng = test_stream(6);
  for (int i = 0; i < 1000; ++i) {
    const auto price =
        set_order_price(Status::Bidder, 520.0, 500.0, std::nullopt, 40000.0, 1.0, rng);
    REQUIRE(price.has_value());
    CHECK(*price >= 500.0);
    CHECK(*price <= 520.0);
  }
}

TEST_CASE("bidder edge cases") {
  auto rng = test_stream(7);
  SUBCASE("no money holds") {
    CHECK(!set_order_price(Status::Bidder, 520.0, 500.0, 505.0, 0.0, 1.0, rng).has_value());
  }
  SUBCASE("money below the lower bound holds") {
    CHECK(!set_order_price(Status::Bidder, 520.0, 500.0, 505.0, 300.0, 1.0, rng).has_value());
  }
  SUBCASE("money caps the upper bound") {
    for (int i = 0; i < 2000; ++i) {
      const auto price =
          set_order_price(Status::Bidder, 520.0, 500.0, 505.0, 510.0, 1.0, rng);
      REQUIRE(price.has_value());
      CHECK(*price <= 510.0);
    }
  }
  SUBCASE("empty interval collapses to the expected price") {
    const auto price =
        set_order_price(Status::Bidder, 502.0, 500.0, 505.0, 40000.0, 1.0, rng);
    REQUIRE(price.has_value());
    CHECK(*price == 502.0);
  }
  SUBCASE("non-positive collapsed price holds") {
    CHECK(!set_order_price(Status::Bidder, -5.0, 500.0, 505.0, 40000.0, 1.0, rng).has_value());
  }
}

TEST_CASE("asker degenerate price holds") {
  auto rng = test_stream(8);
  // expected far below zero drags the whole interval negative
  const auto price = set_order_price(Status::Asker, -80.0, -60.0, std::nullopt, 0.0, 1.0, rng);
  CHECK(!price.has_value());
}

TEST_CASE("random order prices stay inside their intervals") {
  auto rng = test_stream(9);
  for (int i = 0; i < 20000; ++i) {
    const double p_now = rng.uniform(10.0, 1000.0);
    const double money = rng.uniform(0.0, 2000.0);
    const double beta = rng.uniform(0.1, 3.0);
    const bool bid = rng.next_double() < 0.5;
    if (bid) {
      const double expected = p_now + rng.uniform(0.0, 200.0);
      const double best_ask = p_now + rng.uniform(-50.0, 50.0);
      const auto price =
          set_order_price(Status::Bidder, expected, p_now, best_ask, money, beta, rng);
      if (price) {
        CHECK(*price <= money);  // feasibility: bids never exceed money
        CHECK(*price <= expected);
        CHECK(*price >= 1.0);
      }
    } else {
      const double expected = p_now - rng.uniform(0.0, 200.0);
      const auto price =
          set_order_price(Status::Asker, expected, p_now, std::nullopt, money, beta, rng);
      if (price) {
        CHECK(*price >= std::min(expected, expected + beta * (p_now - expected)) - 1e-9);
        CHECK(*price <= std::max(expected, expected + beta * (p_now - expected)) + 1e-9);
      }
    }
  }
}

TEST_CASE("wealth") {
  Trader t = make_fundamentalist();
  t.money = 40000.0;
  t.q1 = t.q2 = 200;
  CHECK(wealth(t, 500.0, 500.0) == 240000.0);

  SUBCASE("cash only") {
    t.q1 = t.q2 = 0;
    CHECK(wealth(t, 500.0, 500.0) == t.money);
  }
  SUBCASE("asset contribution is linear in prices") {
    const double base = wealth(t, 500.0, 500.0) - t.money;
    const double doubled = wealth(t, 1000.0, 1000.0) - t.money;
    CHECK(doubled == 2.0 * base);
  }
}

}  // TEST_SUITE
