#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "mmsim/config.hpp"
#include "mmsim/rng.hpp"

namespace mmsim {

enum class Character : std::uint8_t { Fundamentalist, Chartist };

const char* to_string(Character c);

struct Trader {
  int id = 0;
  Character character = Character::Chartist;
  double money = 0.0;
  long q1 = 0;
  long q2 = 0;
  double theta_i = 0.0;  // fundamentalist price offset, fixed per trader
  int window = 2;        // chartist averaging window, fixed per trader

  long holdings(int asset) const { return asset == 1 ? q1 : q2; }
  long& holdings(int asset) { return asset == 1 ? q1 : q2; }
};

enum class Status : std::uint8_t { Bidder, Asker, Holder };

const char* to_string(Status s);

struct AssetDecision {
  Status status = Status::Holder;
  double expected = 0.0;
  double order_price = 0.0;  // meaningful only when status != Holder
};

struct TraderDecision {
  std::array<AssetDecision, 2> asset;  // index 0 -> asset 1, index 1 -> asset 2

  const AssetDecision& for_asset(int a) const { return asset[a - 1]; }
  AssetDecision& for_asset(int a) { return asset[a - 1]; }
};

// Random-walk fundamental values, updated every t_f steps.
struct FundamentalState {
  double fv1 = 0.0;
  double fv2 = 0.0;

  double value(int asset) const { return asset == 1 ? fv1 : fv2; }
};

// Adds a Normal(0, sigma_af) increment to each fundamental value when
// t > 0 and t is a multiple of t_f; otherwise returns the input unchanged.
FundamentalState update_fundamental_values(const FundamentalState& fs, long t,
                                           const SimConfig& cfg, rng::Stream& rng);

// p_now + phi * (p_F - p_now) + eps with p_F = p_a(0) + F_Va + theta_i and
// eps ~ Uniform(-sigma, sigma).
double fundamentalist_expectation(const Trader& trader, int asset, double p_now,
                                  const FundamentalState& fs, const SimConfig& cfg,
                                  rng::Stream& rng);

// p(t) + (kappa / T) * (p(t) - mean of the last min(T+1, available) prices)
// + eps. history must be non-empty with p(t) last.
double chartist_expectation(const Trader& trader, int asset,
                            std::span<const double> history, const SimConfig& cfg,
                            rng::Stream& rng);

// Bidder above p_now + tau, asker below p_now - tau, holder in between;
// equality at either boundary holds.
Status decide_status(double expected, double p_now, double tau);

// Personal order price, or nullopt when the trader ends up holding.
// Bidder: uniform in [L, U] with L the best ask observed last step (p_now if
// none) and U = min(expected, money); money < L holds, empty interval
// collapses to the expected price. Asker: uniform in
// [expected, expected + beta_ask * (p_now - expected)]. Non-positive
// computed prices (below price_floor) hold.
std::optional<double> set_order_price(Status status, double expected, double p_now,
                                      std::optional<double> best_ask_prev, double money,
                                      double beta_ask, rng::Stream& rng,
                                      double price_floor = 1.0);

double wealth(const Trader& trader, double p1, double p2);

}  // namespace mmsim
