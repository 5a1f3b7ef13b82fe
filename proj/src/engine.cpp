#include "mmsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mmsim {

namespace {

TraderDecision decide_one(const Trader& trader, const MarketState& market,
                          const std::array<std::optional<double>, 2>& prev_best_ask,
                          const SimConfig& cfg, rng::Stream& stream) {
  TraderDecision decision;
  double committed = 0.0;  // money reserved by the asset-1 bid
  for (int asset = 1; asset <= 2; ++asset) {
    const double p_now = market.price(asset);
    const double expected =
        trader.character == Character::Fundamentalist
            ? fundamentalist_expectation(trader, asset, p_now, market.fundamental, cfg, stream)
            : chartist_expectation(trader, asset, market.history(asset), cfg, stream);

    AssetDecision& ad = decision.for_asset(asset);
    ad.expected = expected;
    ad.status = Status::Holder;

    const Status wanted = decide_status(expected, p_now, cfg.tau);
    if (wanted == Status::Bidder) {
      const double available = trader.money - committed;
      auto price = set_order_price(Status::Bidder, expected, p_now, prev_best_ask[asset - 1],
                                   available, cfg.beta_ask, stream, cfg.price_floor);
      if (price) {
        ad.status = Status::Bidder;
        ad.order_price = *price;
        committed += *price;
      }
    } else if (wanted == Status::Asker && trader.holdings(asset) >= 1) {
      auto price = set_order_price(Status::Asker, expected, p_now, prev_best_ask[asset - 1],
                                   trader.money, cfg.beta_ask, stream, cfg.price_floor);
      if (price) {
        ad.status = Status::Asker;
        ad.order_price = *price;
      }
    }
  }
  return decision;
}

}  // namespace

SimState initialize(const SimConfig& cfg) {
  validate(cfg);

  const int n = cfg.num_agents();
  SimState state;

  auto topo_rng = rng::derive(cfg.seed, rng::Tag::Topology);
  state.topology = build_small_world(cfg.side, cfg.rewiring_prob, topo_rng);

  state.traders.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Trader& tr = state.traders[static_cast<std::size_t>(i)];
    tr.id = i;
    tr.character = Character::Chartist;
    tr.money = cfg.m0;
    tr.q1 = cfg.q1_0;
    tr.q2 = cfg.q2_0;
    auto traits = rng::derive(cfg.seed, rng::Tag::InitTraits, static_cast<std::uint64_t>(i));
    tr.theta_i = cfg.theta > 0.0 ? traits.uniform_open(-cfg.theta, cfg.theta) : 0.0;
    tr.window = traits.uniform_int_range(2, cfg.t_max);
  }

  // Seeded shuffle; the first floor(fraction * N) slots become fundamentalists.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto shuffle_rng = rng::derive(cfg.seed, rng::Tag::InitShuffle);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[shuffle_rng.uniform_int(i)]);
  }
  const int n_fund = cfg.num_fundamentalists();
  for (int k = 0; k < n_fund; ++k) {
    state.traders[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].character =
        Character::Fundamentalist;
  }

  state.info.threshold = 1.0;
  state.info.alpha = cfg.alpha;
  state.info.info.resize(static_cast<std::size_t>(n));
  auto info_rng = rng::derive(cfg.seed, rng::Tag::InitInfo);
  for (double& level : state.info.info) {
    level = info_rng.next_double() * state.info.threshold;  // [0, threshold)
  }

  state.market.history1 = {cfg.p1_0};
  state.market.history2 = {cfg.p2_0};
  state.market.fundamental = FundamentalState{};
  return state;
}

void decide_all(const std::vector<Trader>& traders, const MarketState& market,
                const std::array<std::optional<double>, 2>& prev_best_ask,
                const SimConfig& cfg, long t, std::vector<TraderDecision>& out,
                ExecPolicy policy) {
  const int n = static_cast<int>(traders.size());
  out.resize(traders.size());

#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      auto stream = rng::derive(cfg.seed, rng::Tag::Decision, static_cast<std::uint64_t>(t),
                                static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] =
          decide_one(traders[static_cast<std::size_t>(i)], market, prev_best_ask, cfg, stream);
    }
    return;
  }
#else
  (void)policy;
#endif

  for (int i = 0; i < n; ++i) {
    auto stream = rng::derive(cfg.seed, rng::Tag::Decision, static_cast<std::uint64_t>(t),
                              static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] =
        decide_one(traders[static_cast<std::size_t>(i)], market, prev_best_ask, cfg, stream);
  }
}

void apply_imitation(std::vector<TraderDecision>& decisions, const AvalancheResult& avalanche,
                     const std::vector<Trader>& traders) {
  const TraderDecision lead = decisions[static_cast<std::size_t>(avalanche.trigger)];
  for (int participant : avalanche.participants) {
    if (participant == avalanche.trigger) continue;
    const Trader& trader = traders[static_cast<std::size_t>(participant)];
    TraderDecision copied = lead;
    double committed = 0.0;
    for (int asset = 1; asset <= 2; ++asset) {
      AssetDecision& ad = copied.for_asset(asset);
      if (ad.status == Status::Bidder) {
        if (trader.money - committed >= ad.order_price) {
          committed += ad.order_price;
        } else {
          ad.status = Status::Holder;
        }
      } else if (ad.status == Status::Asker && trader.holdings(asset) < 1) {
        ad.status = Status::Holder;
      }
    }
    decisions[static_cast<std::size_t>(participant)] = copied;
  }
}

Simulation::Simulation(SimConfig cfg, ExecPolicy policy)
    : cfg_(std::move(cfg)), policy_(policy), state_(initialize(cfg_)) {}

StepRow Simulation::step() {
  auto fund_rng = rng::derive(cfg_.seed, rng::Tag::Fundamental, static_cast<std::uint64_t>(t_));
  state_.market.fundamental =
      update_fundamental_values(state_.market.fundamental, t_, cfg_, fund_rng);

  decide_all(state_.traders, state_.market, prev_best_ask_, cfg_, t_, decisions_, policy_);

  auto drive_rng = rng::derive(cfg_.seed, rng::Tag::Drive, static_cast<std::uint64_t>(t_));
  drive(state_.info, drive_rng);
  avalanche_ = relax(state_.info, state_.topology);
  assert(*std::max_element(state_.info.info.begin(), state_.info.info.end()) <
         state_.info.threshold);

  apply_imitation(decisions_, avalanche_, state_.traders);
  if (tally_) tally_decisions();

  OrderBook book1, book2;
  for (std::size_t i = 0; i < decisions_.size(); ++i) {
    for (int asset = 1; asset <= 2; ++asset) {
      const AssetDecision& ad = decisions_[i].for_asset(asset);
      if (ad.status == Status::Holder) continue;
      OrderBook& book = asset == 1 ? book1 : book2;
      Order order{static_cast<int>(i), ad.status == Status::Bidder ? Side::Bid : Side::Ask,
                  ad.order_price, asset};
      (order.side == Side::Bid ? book.bids : book.asks).push_back(order);
    }
  }
  auto tb1 = rng::derive(cfg_.seed, rng::Tag::TieBreak, static_cast<std::uint64_t>(t_), 1);
  auto tb2 = rng::derive(cfg_.seed, rng::Tag::TieBreak, static_cast<std::uint64_t>(t_), 2);
  sort_book(book1, tb1);
  sort_book(book2, tb2);

  const MatchOutcome out1 = match(book1);
  const MatchOutcome out2 = match(book2);
  settle(out1.trades, state_.traders, 1);
  settle(out2.trades, state_.traders, 2);

  const PriceUpdate update = update_global_prices(state_.market.price(1), state_.market.price(2),
                                                  out1, out2, cfg_.delta, cfg_.price_floor);
  if (update.floored1) ++floor_hits_;
  if (update.floored2) ++floor_hits_;
  state_.market.history1.push_back(update.p1_next);
  state_.market.history2.push_back(update.p2_next);

  prev_best_ask_ = {book1.best_ask(), book2.best_ask()};

  const double w1 = static_cast<double>(cfg_.q1_0) / static_cast<double>(cfg_.q1_0 + cfg_.q2_0);

  StepRow row;
  row.t = t_;
  row.p1 = update.p1_next;
  row.p2 = update.p2_next;
  row.p_avg = w1 * update.p1_next + (1.0 - w1) * update.p2_next;
  row.avalanche_size = avalanche_.size();
  row.book1 = {out1.n_b, out1.n_a, out1.n_t, out1.p_last, imbalance(out1)};
  row.book2 = {out2.n_b, out2.n_a, out2.n_t, out2.p_last, imbalance(out2)};

  ++t_;
  return row;
}

void Simulation::tally_decisions() {
  for (std::size_t i = 0; i < decisions_.size(); ++i) {
    GroupActivity& group = state_.traders[i].character == Character::Fundamentalist
                               ? fund_activity_
                               : chart_activity_;
    for (int asset = 1; asset <= 2; ++asset) {
      group.slots += 1;
      const Status st = decisions_[i].for_asset(asset).status;
      if (st == Status::Bidder) group.buy += 1;
      if (st == Status::Asker) group.sell += 1;
    }
  }
}

RunRecord Simulation::run() {
  RunRecord record;
  record.money_total_initial = 0.0;
  for (const Trader& tr : state_.traders) {
    record.money_total_initial += tr.money;
    record.q1_total_initial += tr.q1;
    record.q2_total_initial += tr.q2;
  }

  for (long s = 0; s < cfg_.transient_steps; ++s) step();

  tally_ = true;
  record.rows.reserve(static_cast<std::size_t>(cfg_.record_steps));
  for (long s = 0; s < cfg_.record_steps; ++s) record.rows.push_back(step());
  tally_ = false;

  record.fundamentalists = fund_activity_;
  record.chartists = chart_activity_;
  record.price_floor_hits = floor_hits_;

  const double p1 = state_.market.price(1);
  const double p2 = state_.market.price(2);
  record.agents.reserve(state_.traders.size());
  for (const Trader& tr : state_.traders) {
    record.money_total_final += tr.money;
    record.q1_total_final += tr.q1;
    record.q2_total_final += tr.q2;
    record.agents.push_back(
        {tr.id, tr.character, tr.money, tr.q1, tr.q2, wealth(tr, p1, p2)});
  }
  return record;
}

RunRecord run_simulation(const SimConfig& cfg, ExecPolicy policy) {
  Simulation sim(cfg, policy);
  return sim.run();
}

std::vector<RunRecord> run_ensemble(const SimConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                    ExecPolicy policy) {
  std::vector<RunRecord> records(seeds.size());

#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel && seeds.size() > 1) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      SimConfig run_cfg = cfg;
      run_cfg.seed = seeds[k];
      records[k] = run_simulation(run_cfg, ExecPolicy::Serial);
    }
    return records;
  }
#endif

  for (std::size_t k = 0; k < seeds.size(); ++k) {
    SimConfig run_cfg = cfg;
    run_cfg.seed = seeds[k];
    records[k] = run_simulation(run_cfg, policy);
  }
  return records;
}

}  // namespace mmsim
