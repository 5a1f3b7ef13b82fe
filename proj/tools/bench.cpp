// Timing comparison of the serial reference paths against the OpenMP ones.
// The parallel paths must be bit-identical, so each section also checks
// agreement before reporting speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmsim/commands.hpp"
#include "mmsim/engine.hpp"
#include "mmsim/stats.hpp"

using namespace mmsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool decisions_equal(const std::vector<TraderDecision>& a, const std::vector<TraderDecision>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int asset = 1; asset <= 2; ++asset) {
      const AssetDecision& x = a[i].for_asset(asset);
      const AssetDecision& y = b[i].for_asset(asset);
      if (x.status != y.status || x.expected != y.expected || x.order_price != y.order_price) {
        return false;
      }
    }
  }
  return true;
}

void bench_decision_kernel(const SimConfig& cfg, int reps) {
  Simulation sim(cfg);
  for (int i = 0; i < 200; ++i) sim.step();  // warm the price history

  std::vector<TraderDecision> serial_out, parallel_out;
  const auto& prev_ask = sim.prev_best_ask();

  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    decide_all(sim.traders(), sim.market(), prev_ask, cfg, sim.now() + r, serial_out,
               ExecPolicy::Serial);
  }
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    decide_all(sim.traders(), sim.market(), prev_ask, cfg, sim.now() + r, parallel_out,
               ExecPolicy::Parallel);
  }
  const double t_parallel = seconds_since(t0);

  decide_all(sim.traders(), sim.market(), prev_ask, cfg, sim.now(), serial_out,
             ExecPolicy::Serial);
  decide_all(sim.traders(), sim.market(), prev_ask, cfg, sim.now(), parallel_out,
             ExecPolicy::Parallel);
  if (!decisions_equal(serial_out, parallel_out)) {
    std::fprintf(stderr, "FATAL: serial and parallel decision kernels disagree\n");
    std::exit(1);
  }

  std::printf("decision kernel   %5d reps x %4d traders   serial %8.3fs   openmp %8.3fs   x%.2f\n",
              reps, cfg.num_agents(), t_serial, t_parallel, t_serial / t_parallel);
}

void bench_ensemble(SimConfig cfg, int seeds) {
  cfg.transient_steps = 500;
  cfg.record_steps = 1500;
  std::vector<std::uint64_t> seed_list;
  for (int s = 1; s <= seeds; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));

  auto t0 = std::chrono::steady_clock::now();
  auto serial_records = run_ensemble(cfg, seed_list, ExecPolicy::Serial);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto parallel_records = run_ensemble(cfg, seed_list, ExecPolicy::Parallel);
  const double t_parallel = seconds_since(t0);

  for (int k = 0; k < seeds; ++k) {
    const auto& a = serial_records[static_cast<std::size_t>(k)].rows;
    const auto& b = parallel_records[static_cast<std::size_t>(k)].rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].p1 != b[i].p1 || a[i].p2 != b[i].p2) {
        std::fprintf(stderr, "FATAL: serial and parallel ensembles disagree\n");
        std::exit(1);
      }
    }
  }

  std::printf("ensemble          %5d seeds x %4ld steps    serial %8.3fs   openmp %8.3fs   x%.2f\n",
              seeds, cfg.transient_steps + cfg.record_steps, t_serial, t_parallel,
              t_serial / t_parallel);
}

void bench_qfit(const SimConfig& cfg, int reps) {
  SimConfig run_cfg = cfg;
  run_cfg.transient_steps = 500;
  run_cfg.record_steps = 4000;
  run_cfg.delta = 0.03;
  const RunRecord record = run_simulation(run_cfg);

  std::vector<double> prices;
  prices.reserve(record.rows.size());
  for (const StepRow& r : record.rows) prices.push_back(r.p_avg);
  const ReturnsSeries returns = normalized_returns(prices);
  const Histogram pdf = empirical_pdf(returns.normalized);

  auto t0 = std::chrono::steady_clock::now();
  QGaussianFit serial_fit;
  for (int r = 0; r < reps; ++r) {
    serial_fit = fit_qgaussian(pdf, ExecPolicy::Serial);
  }
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  QGaussianFit parallel_fit;
  for (int r = 0; r < reps; ++r) {
    parallel_fit = fit_qgaussian(pdf, ExecPolicy::Parallel);
  }
  const double t_parallel = seconds_since(t0);

  if (serial_fit.q != parallel_fit.q || serial_fit.beta_fit != parallel_fit.beta_fit) {
    std::fprintf(stderr, "FATAL: serial and parallel q fits disagree\n");
    std::exit(1);
  }

  std::printf("q-gaussian fit    %5d reps                  serial %8.3fs   openmp %8.3fs   x%.2f\n",
              reps, t_serial, t_parallel, t_serial / t_parallel);
}

}  // namespace

int main(int argc, char** argv) {
  SimConfig cfg;
  int reps = argc > 1 ? std::atoi(argv[1]) : 2000;
  int seeds = argc > 2 ? std::atoi(argv[2]) : 4;

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; parallel paths run serially\n");
#endif

  bench_decision_kernel(cfg, reps);
  bench_ensemble(cfg, seeds);
  bench_qfit(cfg, 20);
  return 0;
}
