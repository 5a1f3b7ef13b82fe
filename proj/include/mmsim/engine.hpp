#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mmsim/agents.hpp"
#include "mmsim/book.hpp"
#include "mmsim/config.hpp"
#include "mmsim/exec.hpp"
#include "mmsim/herding.hpp"
#include "mmsim/topology.hpp"

namespace mmsim {

struct MarketState {
  std::vector<double> history1;  // history*.back() is the current price
  std::vector<double> history2;
  FundamentalState fundamental;

  double price(int asset) const {
    return asset == 1 ? history1.back() : history2.back();
  }
  const std::vector<double>& history(int asset) const {
    return asset == 1 ? history1 : history2;
  }
};

struct SimState {
  std::vector<Trader> traders;
  AdjacencyList topology;
  InformativeState info;
  MarketState market;
};

// Validates cfg and builds the start-of-run state: equal endowments, seeded
// character shuffle hitting exactly floor(fraction * N) fundamentalists,
// per-trader traits, information levels uniform in [0, threshold).
SimState initialize(const SimConfig& cfg);

// Every trader's expectations, status and order price for both assets.
// Pure with respect to shared state; each trader uses the substream
// (seed, Decision, t, id), so the loop order does not matter.
void decide_all(const std::vector<Trader>& traders, const MarketState& market,
                const std::array<std::optional<double>, 2>& prev_best_ask,
                const SimConfig& cfg, long t, std::vector<TraderDecision>& out,
                ExecPolicy policy = ExecPolicy::Serial);

// Avalanche participants overwrite their decisions with the trigger's
// per-asset status and order price, dropping to holder where their own
// budget or holdings cannot support the copied order.
void apply_imitation(std::vector<TraderDecision>& decisions, const AvalancheResult& avalanche,
                     const std::vector<Trader>& traders);

struct BookStepStats {
  int n_b = 0;
  int n_a = 0;
  int n_t = 0;
  std::optional<double> p_last;
  long omega = 0;
};

struct StepRow {
  long t = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p_avg = 0.0;
  std::uint64_t avalanche_size = 0;
  BookStepStats book1;
  BookStepStats book2;
};

struct AgentSnapshot {
  int id = 0;
  Character character = Character::Chartist;
  double money = 0.0;
  long q1 = 0;
  long q2 = 0;
  double wealth = 0.0;
};

// Buy/sell tallies over (trader, asset, step) slots of one character group.
struct GroupActivity {
  std::uint64_t buy = 0;
  std::uint64_t sell = 0;
  std::uint64_t slots = 0;

  double buy_fraction() const { return slots ? static_cast<double>(buy) / slots : 0.0; }
  double sell_fraction() const { return slots ? static_cast<double>(sell) / slots : 0.0; }
};

struct RunRecord {
  std::vector<StepRow> rows;
  std::vector<AgentSnapshot> agents;
  GroupActivity fundamentalists;
  GroupActivity chartists;
  double money_total_initial = 0.0;
  double money_total_final = 0.0;
  long q1_total_initial = 0;
  long q1_total_final = 0;
  long q2_total_initial = 0;
  long q2_total_final = 0;
  std::uint64_t price_floor_hits = 0;
};

class Simulation {
 public:
  explicit Simulation(SimConfig cfg, ExecPolicy policy = ExecPolicy::Serial);

  // One full step: fundamentals, decisions, herding avalanche, imitation,
  // books, matching, settlement, price update.
  StepRow step();

  // transient_steps unrecorded steps, then record_steps recorded ones.
  RunRecord run();

  const SimConfig& config() const { return cfg_; }
  long now() const { return t_; }
  const std::vector<Trader>& traders() const { return state_.traders; }
  const MarketState& market() const { return state_.market; }
  const InformativeState& info() const { return state_.info; }
  const AdjacencyList& topology() const { return state_.topology; }
  const std::vector<TraderDecision>& last_decisions() const { return decisions_; }
  const AvalancheResult& last_avalanche() const { return avalanche_; }
  const std::array<std::optional<double>, 2>& prev_best_ask() const { return prev_best_ask_; }
  std::uint64_t price_floor_hits() const { return floor_hits_; }

 private:
  SimConfig cfg_;
  ExecPolicy policy_;
  SimState state_;
  long t_ = 0;
  std::array<std::optional<double>, 2> prev_best_ask_{};
  std::vector<TraderDecision> decisions_;
  AvalancheResult avalanche_;
  std::uint64_t floor_hits_ = 0;
  GroupActivity fund_activity_;
  GroupActivity chart_activity_;
  bool tally_ = false;

  void tally_decisions();
};

RunRecord run_simulation(const SimConfig& cfg, ExecPolicy policy = ExecPolicy::Serial);

// Independent runs differing only in seed; with ExecPolicy::Parallel the
// seeds execute concurrently.
std::vector<RunRecord> run_ensemble(const SimConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                    ExecPolicy policy = ExecPolicy::Serial);

}  // namespace mmsim
