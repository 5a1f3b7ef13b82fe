#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmsim/config.hpp"
#include "mmsim/engine.hpp"
#include "mmsim/stats.hpp"

namespace mmsim {

// Return-distribution statistics of one price series.
struct SeriesStats {
  QGaussianFit fit;
  double excess_kurt = 0.0;
};

SeriesStats compute_series_stats(std::span<const double> prices,
                                 double bin_width = kDefaultBinWidth);

struct RunOptions {
  SimConfig cfg;
  std::vector<std::uint64_t> seeds;  // empty -> use cfg.seed
  std::string out_dir = "out";
  ExecPolicy policy = ExecPolicy::Parallel;
  bool dump_edges = false;
};

struct SeedSummary {
  std::uint64_t seed = 0;
  std::optional<SeriesStats> p1;
  std::optional<SeriesStats> p2;
  std::optional<SeriesStats> p_avg;
  std::optional<double> avalanche_decades;
  double fund_buy = 0.0;
  double fund_sell = 0.0;
  double chart_buy = 0.0;
  double chart_sell = 0.0;
  std::uint64_t price_floor_hits = 0;
};

struct EnsembleSummary {
  std::vector<SeedSummary> per_seed;
  std::optional<double> median_q_p1;
  std::optional<double> median_q_p2;
  std::optional<double> median_q_avg;
  std::optional<double> median_kurt_p1;
  std::optional<double> median_kurt_p2;
  std::optional<double> median_kurt_avg;
  std::optional<double> median_avalanche_decades;
  double fund_buy = 0.0;
  double fund_sell = 0.0;
  double chart_buy = 0.0;
  double chart_sell = 0.0;
};

SeedSummary summarize_record(std::uint64_t seed, const RunRecord& record);
EnsembleSummary summarize_ensemble(const std::vector<std::uint64_t>& seeds,
                                   const std::vector<RunRecord>& records);

// Runs every seed, writes one subdirectory per seed plus summary.json and
// manifest.json under out_dir, and returns the ensemble summary.
EnsembleSummary run_command(const RunOptions& opts);

// Re-runs the configuration and seed list stored in a manifest.
EnsembleSummary rerun_from_manifest(const std::string& manifest_path, const std::string& out_dir,
                                    ExecPolicy policy = ExecPolicy::Parallel);

// Full stats pipeline over a run directory containing prices.csv; writes
// pdf.csv and summary.json next to it.
void analyze_command(const std::string& run_dir);

// One run tree per parameter value, under out_dir/<param>_<value>.
void sweep_command(const std::string& param, const std::vector<std::string>& values,
                   const RunOptions& base);

}  // namespace mmsim
