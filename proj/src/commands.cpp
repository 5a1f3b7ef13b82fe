#include "mmsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "mmsim/errors.hpp"
#include "mmsim/io.hpp"

namespace mmsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Below this many recorded steps the return histogram is too sparse for a
// meaningful fit; summaries carry nulls instead.
constexpr std::size_t kMinRowsForStats = 100;

json stats_json(const std::optional<SeriesStats>& s) {
  if (!s) return nullptr;
  return json{{"q", s->fit.q},
              {"beta_fit", s->fit.beta_fit},
              {"amp", s->fit.amp},
              {"residual", s->fit.residual},
              {"converged", s->fit.converged},
              {"excess_kurtosis", s->excess_kurt}};
}

json opt_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::optional<double> median_of(const std::vector<SeedSummary>& seeds, auto&& project) {
  std::vector<double> values;
  for (const SeedSummary& s : seeds) {
    if (auto v = project(s)) values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  return median(std::move(values));
}

std::string seed_dir_name(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

void write_seed_outputs(const fs::path& dir, const RunRecord& record) {
  io::ensure_directory(dir.string());
  io::write_prices_csv(record.rows, (dir / "prices.csv").string());
  io::write_avalanches_csv(record.rows, (dir / "avalanches.csv").string());
  io::write_books_csv(record.rows, (dir / "books.csv").string());
  io::write_agents_csv(record.agents, (dir / "agents.csv").string());
}

void write_summary_json(const EnsembleSummary& summary, const std::string& path) {
  json per_seed = json::array();
  for (const SeedSummary& s : summary.per_seed) {
    per_seed.push_back(json{{"seed", s.seed},
                            {"p1", stats_json(s.p1)},
                            {"p2", stats_json(s.p2)},
                            {"p_avg", stats_json(s.p_avg)},
                            {"avalanche_decades", opt_json(s.avalanche_decades)},
                            {"fund_buy", s.fund_buy},
                            {"fund_sell", s.fund_sell},
                            {"chart_buy", s.chart_buy},
                            {"chart_sell", s.chart_sell},
                            {"price_floor_hits", s.price_floor_hits}});
  }
  json j{{"per_seed", per_seed},
         {"median",
          json{{"q_p1", opt_json(summary.median_q_p1)},
               {"q_p2", opt_json(summary.median_q_p2)},
               {"q_avg", opt_json(summary.median_q_avg)},
               {"excess_kurtosis_p1", opt_json(summary.median_kurt_p1)},
               {"excess_kurtosis_p2", opt_json(summary.median_kurt_p2)},
               {"excess_kurtosis_avg", opt_json(summary.median_kurt_avg)},
               {"avalanche_decades", opt_json(summary.median_avalanche_decades)}}},
         {"fund_buy", summary.fund_buy},
         {"fund_sell", summary.fund_sell},
         {"chart_buy", summary.chart_buy},
         {"chart_sell", summary.chart_sell}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("io: cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

}  // namespace

SeriesStats compute_series_stats(std::span<const double> prices, double bin_width) {
  const ReturnsSeries returns = normalized_returns(prices);
  const Histogram pdf = empirical_pdf(returns.normalized, bin_width);
  SeriesStats s;
  s.fit = fit_qgaussian(pdf);
  s.excess_kurt = excess_kurtosis(returns.normalized);
  return s;
}

SeedSummary summarize_record(std::uint64_t seed, const RunRecord& record) {
  SeedSummary s;
  s.seed = seed;
  s.fund_buy = record.fundamentalists.buy_fraction();
  s.fund_sell = record.fundamentalists.sell_fraction();
  s.chart_buy = record.chartists.buy_fraction();
  s.chart_sell = record.chartists.sell_fraction();
  s.price_floor_hits = record.price_floor_hits;

  if (record.rows.size() >= kMinRowsForStats) {
    std::vector<double> p1, p2, pavg;
    std::vector<std::uint64_t> sizes;
    p1.reserve(record.rows.size());
    p2.reserve(record.rows.size());
    pavg.reserve(record.rows.size());
    sizes.reserve(record.rows.size());
    for (const StepRow& r : record.rows) {
      p1.push_back(r.p1);
      p2.push_back(r.p2);
      pavg.push_back(r.p_avg);
      sizes.push_back(r.avalanche_size);
    }
    s.p1 = compute_series_stats(p1);
    s.p2 = compute_series_stats(p2);
    s.p_avg = compute_series_stats(pavg);
    s.avalanche_decades = avalanche_statistics(sizes).decades_span;
  }
  return s;
}

EnsembleSummary summarize_ensemble(const std::vector<std::uint64_t>& seeds,
                                   const std::vector<RunRecord>& records) {
  EnsembleSummary summary;
  for (std::size_t k = 0; k < records.size(); ++k) {
    summary.per_seed.push_back(summarize_record(seeds[k], records[k]));
  }

  summary.median_q_p1 = median_of(summary.per_seed, [](const SeedSummary& s) {
    return s.p1 ? std::optional<double>(s.p1->fit.q) : std::nullopt;
  });
  summary.median_q_p2 = median_of(summary.per_seed, [](const SeedSummary& s) {
    return s.p2 ? std::optional<double>(s.p2->fit.q) : std::nullopt;
  });
  summary.median_q_avg = median_of(summary.per_seed, [](const SeedSummary& s) {
    return s.p_avg ? std::optional<double>(s.p_avg->fit.q) : std::nullopt;
  });
  summary.median_kurt_p1 = median_of(summary.per_seed, [](const SeedSummary& s) {
    return s.p1 ? std::optional<double>(s.p1->excess_kurt) : std::nullopt;
  });
  summary.median_kurt_p2 = median_of(summary.per_seed, [](const SeedSummary& s) {
    return s.p2 ? std::optional<double>(s.p2->excess_kurt) : std::nullopt;
  });
  summary.median_kurt_avg = median_of(summary.per_seed, [](const SeedSummary& s) {
    return s.p_avg ? std::optional<double>(s.p_avg->excess_kurt) : std::nullopt;
  });
  summary.median_avalanche_decades =
      median_of(summary.per_seed, [](const SeedSummary& s) { return s.avalanche_decades; });

  // Activity fractions pooled over all seeds (slots are equal per seed).
  double fb = 0, fsell = 0, cb = 0, cs = 0;
  for (const SeedSummary& s : summary.per_seed) {
    fb += s.fund_buy;
    fsell += s.fund_sell;
    cb += s.chart_buy;
    cs += s.chart_sell;
  }
  const double n = static_cast<double>(summary.per_seed.size());
  if (n > 0) {
    summary.fund_buy = fb / n;
    summary.fund_sell = fsell / n;
    summary.chart_buy = cb / n;
    summary.chart_sell = cs / n;
  }
  return summary;
}

EnsembleSummary run_command(const RunOptions& opts) {
  validate(opts.cfg);
  std::vector<std::uint64_t> seeds = opts.seeds;
  if (seeds.empty()) seeds.push_back(opts.cfg.seed);
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw InputError("run: duplicate seeds in seed list");

  const fs::path out_dir(opts.out_dir);
  io::ensure_directory(out_dir.string());

  const std::vector<RunRecord> records = run_ensemble(opts.cfg, seeds, opts.policy);

  io::Manifest manifest;
  manifest.config = opts.cfg;
  manifest.seeds = seeds;

  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const fs::path dir = out_dir / seed_dir_name(seeds[k]);
    write_seed_outputs(dir, records[k]);
    for (const char* name : {"prices.csv", "avalanches.csv", "books.csv", "agents.csv"}) {
      const fs::path p = dir / name;
      manifest.checksums[(fs::path(seed_dir_name(seeds[k])) / name).string()] =
          io::file_checksum(p.string());
    }
    if (opts.dump_edges) {
      SimConfig cfg = opts.cfg;
      cfg.seed = seeds[k];
      auto rng = rng::derive(cfg.seed, rng::Tag::Topology);
      const AdjacencyList graph = build_small_world(cfg.side, cfg.rewiring_prob, rng);
      std::ofstream out(dir / "edges.csv", std::ios::binary);
      dump_edges_csv(graph, out);
    }
  }

  const EnsembleSummary summary = summarize_ensemble(seeds, records);
  write_summary_json(summary, (out_dir / "summary.json").string());
  io::write_manifest(manifest, (out_dir / "manifest.json").string());
  return summary;
}

EnsembleSummary rerun_from_manifest(const std::string& manifest_path, const std::string& out_dir,
                                    ExecPolicy policy) {
  const io::Manifest manifest = io::read_manifest(manifest_path);
  RunOptions opts;
  opts.cfg = manifest.config;
  opts.seeds = manifest.seeds;
  opts.out_dir = out_dir;
  opts.policy = policy;
  return run_command(opts);
}

void analyze_command(const std::string& run_dir) {
  const fs::path dir(run_dir);
  const fs::path prices_path = dir / "prices.csv";
  if (!fs::exists(prices_path)) {
    throw InputError("analyze: missing input '" + prices_path.string() + "'");
  }

  const io::PriceSeries prices = io::read_prices_csv(prices_path.string());

  json series_json;
  std::vector<io::PdfRow> pdf_rows;
  const std::pair<const char*, const std::vector<double>*> series[] = {
      {"p1", &prices.p1}, {"p2", &prices.p2}, {"p_avg", &prices.p_avg}};
  for (const auto& [name, data] : series) {
    const ReturnsSeries returns = normalized_returns(*data);
    const Histogram pdf = empirical_pdf(returns.normalized);
    const QGaussianFit fit = fit_qgaussian(pdf);
    const double kurt = excess_kurtosis(returns.normalized);

    series_json[name] = stats_json(SeriesStats{fit, kurt});
    for (std::size_t b = 0; b < pdf.centers.size(); ++b) {
      const double x = pdf.centers[b];
      pdf_rows.push_back({name, x, pdf.densities[b],
                          std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI),
                          qgaussian_pdf(x, fit.q, fit.beta_fit, fit.amp)});
    }
  }

  json j{{"series", series_json}};

  const fs::path avalanche_path = dir / "avalanches.csv";
  if (fs::exists(avalanche_path)) {
    const auto sizes = io::read_avalanches_csv(avalanche_path.string());
    if (!sizes.empty()) {
      const AvalancheSummary av = avalanche_statistics(sizes);
      j["avalanches"] = json{{"max", av.max_size},
                             {"min", av.min_size},
                             {"mean", av.mean_size},
                             {"decades_span", av.decades_span}};
    }
  }

  io::write_pdf_csv(pdf_rows, (dir / "pdf.csv").string());
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw InputError("analyze: cannot write summary.json");
  out << j.dump(2) << '\n';
}

void sweep_command(const std::string& param, const std::vector<std::string>& values,
                   const RunOptions& base) {
  if (values.empty()) throw InputError("sweep: need at least one value");
  const fs::path out_dir(base.out_dir);
  io::ensure_directory(out_dir.string());

  json sweep_json;
  for (const std::string& value : values) {
    RunOptions opts = base;
    apply_override(opts.cfg, param, value);
    opts.out_dir = (out_dir / (param + "_" + value)).string();
    const EnsembleSummary summary = run_command(opts);
    sweep_json[value] = json{{"q_avg", opt_json(summary.median_q_avg)},
                             {"excess_kurtosis_avg", opt_json(summary.median_kurt_avg)},
                             {"avalanche_decades", opt_json(summary.median_avalanche_decades)},
                             {"fund_buy", summary.fund_buy},
                             {"fund_sell", summary.fund_sell},
                             {"chart_buy", summary.chart_buy},
                             {"chart_sell", summary.chart_sell}};
  }
  std::ofstream out(out_dir / "sweep.json", std::ios::binary);
  if (!out) throw InputError("sweep: cannot write sweep.json");
  out << json{{"param", param}, {"results", sweep_json}}.dump(2) << '\n';
}

}  // namespace mmsim
