#include "mmsim/agents.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace mmsim {

const char* to_string(Character c) {
  return c == Character::Fundamentalist ? "fundamentalist" : "chartist";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Bidder: return "bidder";
    case Status::Asker: return "asker";
    default: return "holder";
  }
}

FundamentalState update_fundamental_values(const FundamentalState& fs, long t,
                                           const SimConfig& cfg, rng::Stream& rng) {
  if (t <= 0 || t % cfg.t_f != 0) return fs;
  FundamentalState next = fs;
  next.fv1 += rng.normal(0.0, cfg.sigma_1f);
  next.fv2 += rng.normal(0.0, cfg.sigma_2f);
  return next;
}

double fundamentalist_expectation(const Trader& trader, int asset, double p_now,
                                  const FundamentalState& fs, const SimConfig& cfg,
                                  rng::Stream& rng) {
  assert(trader.character == Character::Fundamentalist);
  const double p0 = asset == 1 ? cfg.p1_0 : cfg.p2_0;
  const double p_fund = p0 + fs.value(asset) + trader.theta_i;
  const double eps = cfg.sigma > 0.0 ? rng.uniform_open(-cfg.sigma, cfg.sigma) : 0.0;
  return p_now + cfg.phi * (p_fund - p_now) + eps;
}

double chartist_expectation(const Trader& trader, int asset,
                            std::span<const double> history, const SimConfig& cfg,
                            rng::Stream& rng) {
  assert(trader.character == Character::Chartist);
  assert(!history.empty());
  (void)asset;

  const double p_now = history.back();
  const std::size_t window = std::min(history.size(),
                                      static_cast<std::size_t>(trader.window) + 1);
  const auto tail = history.last(window);
  const double reference =
      std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(window);

  const double eps = cfg.sigma > 0.0 ? rng.uniform_open(-cfg.sigma, cfg.sigma) : 0.0;
  return p_now + cfg.kappa / static_cast<double>(trader.window) * (p_now - reference) + eps;
}

Status decide_status(double expected, double p_now, double tau) {
  if (expected > p_now + tau) return Status::Bidder;
  if (expected < p_now - tau) return Status::Asker;
  return Status::Holder;
}

std::optional<double> set_order_price(Status status, double expected, double p_now,
                                      std::optional<double> best_ask_prev, double money,
                                      double beta_ask, rng::Stream& rng,
                                      double price_floor) {
  assert(status != Status::Holder);

  if (status == Status::Bidder) {
    const double lo = best_ask_prev.value_or(p_now);
    const double hi = std::min(expected, money);
    if (money < lo) return std::nullopt;
    if (lo > hi) {
      // Empty interval: with money >= lo this means expected < lo; the bid
      // collapses to the maximal willingness to pay.
      if (hi < price_floor) return std::nullopt;
      return hi;
    }
    const double price = rng.uniform(lo, hi);
    if (price < price_floor) return std::nullopt;
    return price;
  }

  const double lo = expected;
  const double hi = expected + beta_ask * (p_now - expected);
  const double price = rng.uniform(std::min(lo, hi), std::max(lo, hi));
  if (price < price_floor) return std::nullopt;
  return price;
}

double wealth(const Trader& trader, double p1, double p2) {
  return trader.money + static_cast<double>(trader.q1) * p1 +
         static_cast<double>(trader.q2) * p2;
}

}  // namespace mmsim
