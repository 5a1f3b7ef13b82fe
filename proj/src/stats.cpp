#include "mmsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmsim/errors.hpp"

namespace mmsim {

ReturnsSeries normalized_returns(std::span<const double> prices) {
  if (prices.size() < 3) {
    throw InputError("returns: need at least 3 prices, got " + std::to_string(prices.size()));
  }
  for (double p : prices) {
    if (!(p > 0.0)) throw InputError("returns: all prices must be positive");
  }

  ReturnsSeries rs;
  rs.raw.resize(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    rs.raw[i] = std::log(prices[i + 1]) - std::log(prices[i]);
  }

  const double n = static_cast<double>(rs.raw.size());
  double sum = 0.0;
  for (double r : rs.raw) sum += r;
  rs.mean = sum / n;
  double ss = 0.0;
  for (double r : rs.raw) ss += (r - rs.mean) * (r - rs.mean);
  rs.stdev = std::sqrt(ss / n);  // population standard deviation
  if (rs.stdev == 0.0) {
    throw DegenerateSeriesError("returns: zero standard deviation (constant prices)");
  }

  rs.normalized.resize(rs.raw.size());
  for (std::size_t i = 0; i < rs.raw.size(); ++i) {
    rs.normalized[i] = (rs.raw[i] - rs.mean) / rs.stdev;
  }
  return rs;
}

std::vector<double> weighted_average_price(std::span<const double> p1,
                                           std::span<const double> p2, long q1_0, long q2_0) {
  if (p1.size() != p2.size()) {
    throw InputError("weighted average: series lengths differ");
  }
  if (q1_0 + q2_0 <= 0) {
    throw InputError("weighted average: q1_0 + q2_0 must be positive");
  }
  const double w1 = static_cast<double>(q1_0) / static_cast<double>(q1_0 + q2_0);
  std::vector<double> out(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    out[i] = w1 * p1[i] + (1.0 - w1) * p2[i];
  }
  return out;
}

Histogram empirical_pdf(std::span<const double> samples, double bin_width) {
  if (!(bin_width > 0.0)) throw InputError("pdf: bin_width must be positive");
  if (samples.empty()) throw InputError("pdf: need at least one sample");

  // Bin index of x is lround(x / w); the range is sized from the samples so
  // every index lands inside it.
  long k_max = 0;
  for (double x : samples) {
    k_max = std::max(k_max, std::labs(std::lround(x / bin_width)));
  }

  const std::size_t n_bins = static_cast<std::size_t>(2 * k_max + 1);
  std::vector<std::size_t> counts(n_bins, 0);
  for (double x : samples) {
    const long k = std::lround(x / bin_width);
    counts[static_cast<std::size_t>(k + k_max)] += 1;
  }

  Histogram h;
  h.bin_width = bin_width;
  h.count = samples.size();
  h.centers.resize(n_bins);
  h.densities.resize(n_bins);
  const double norm = 1.0 / (static_cast<double>(samples.size()) * bin_width);
  for (std::size_t b = 0; b < n_bins; ++b) {
    h.centers[b] = static_cast<double>(static_cast<long>(b) - k_max) * bin_width;
    h.densities[b] = static_cast<double>(counts[b]) * norm;
  }
  return h;
}

std::vector<double> bin_counts(const Histogram& h) {
  std::vector<double> counts(h.densities.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts[i] = std::round(h.densities[i] * static_cast<double>(h.count) * h.bin_width);
  }
  return counts;
}

double excess_kurtosis(std::span<const double> samples) {
  if (samples.size() < 4) {
    throw InputError("kurtosis: need at least 4 samples");
  }
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  if (m2 == 0.0) throw DegenerateSeriesError("kurtosis: zero variance");
  return m4 / (m2 * m2) - 3.0;
}

double qgaussian_pdf(double x, double q, double beta, double amp) {
  if (q == 1.0) return amp * std::exp(-beta * x * x);
  const double base = 1.0 - (1.0 - q) * beta * x * x;
  if (base <= 0.0) return 0.0;
  return amp * std::pow(base, 1.0 / (1.0 - q));
}

namespace {

struct LogBins {
  std::vector<double> x2;      // squared bin centers
  std::vector<double> logd;    // log densities
  std::vector<double> weight;  // per-bin least-squares weights
  double weight_total = 0.0;
};

// Log-model value without the amplitude term.
double log_shape(double x2, double q, double beta) {
  if (q == 1.0) return -beta * x2;
  return std::log1p((q - 1.0) * beta * x2) / (1.0 - q);
}

// Weighted sum of squared log errors with the amplitude profiled out, plus
// the profiled log-amplitude itself.
std::pair<double, double> profiled_sse(const LogBins& bins, double q, double beta) {
  const std::size_t n = bins.x2.size();
  double mean_resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_resid += bins.weight[i] * (bins.logd[i] - log_shape(bins.x2[i], q, beta));
  }
  mean_resid /= bins.weight_total;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = bins.logd[i] - log_shape(bins.x2[i], q, beta) - mean_resid;
    sse += bins.weight[i] * e * e;
  }
  return {sse, mean_resid};
}

// Exact weighted least-squares slope for the Gaussian case, where
// log y = log A - beta x^2 is linear in x^2.
double gaussian_beta(const LogBins& bins) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < bins.x2.size(); ++i) {
    mx += bins.weight[i] * bins.x2[i];
    my += bins.weight[i] * bins.logd[i];
  }
  mx /= bins.weight_total;
  my /= bins.weight_total;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < bins.x2.size(); ++i) {
    sxx += bins.weight[i] * (bins.x2[i] - mx) * (bins.x2[i] - mx);
    sxy += bins.weight[i] * (bins.x2[i] - mx) * (bins.logd[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return std::max(-slope, 1e-12);
}

constexpr double kGoldenRatio = 0.6180339887498949;

// Golden-section minimum of f over [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, int iterations) {
  double a = lo, b = hi;
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Best beta for a fixed q: coarse geometric scan, then golden-section
// around the best cell. The Gaussian case solves exactly.
double best_beta(const LogBins& bins, double q) {
  if (q == 1.0) return gaussian_beta(bins);

  constexpr int kScan = 121;
  const double lo = std::log(1e-6), hi = std::log(1e6);
  double best_u = lo;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / (kScan - 1);
    const double sse = profiled_sse(bins, q, std::exp(u)).first;
    if (sse < best) {
      best = sse;
      best_u = u;
    }
  }
  const double cell = (hi - lo) / (kScan - 1);
  const double u = golden_min(
      [&](double v) { return profiled_sse(bins, q, std::exp(v)).first; },
      best_u - cell, best_u + cell, 48);
  return std::exp(u);
}

LogBins nonzero_log_bins(std::span<const double> centers, std::span<const double> densities,
                         std::span<const double> weights) {
  if (centers.size() != densities.size()) {
    throw InputError("qgaussian fit: centers and densities lengths differ");
  }
  if (!weights.empty() && weights.size() != densities.size()) {
    throw InputError("qgaussian fit: weights length differs from densities");
  }
  LogBins bins;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    if (densities[i] > 0.0 && w > 0.0) {
      bins.x2.push_back(centers[i] * centers[i]);
      bins.logd.push_back(std::log(densities[i]));
      bins.weight.push_back(w);
      bins.weight_total += w;
    }
  }
  if (bins.x2.size() < 8) {
    throw InputError("qgaussian fit: need at least 8 nonzero-density bins, got " +
                     std::to_string(bins.x2.size()));
  }
  return bins;
}

QGaussianFit assemble_fit(const LogBins& bins, double q, double beta, bool converged) {
  auto [sse, log_amp] = profiled_sse(bins, q, beta);
  return {q, beta, std::exp(log_amp), sse, converged};
}

}  // namespace

QGaussianFit fit_qgaussian(std::span<const double> centers, std::span<const double> densities,
                           std::span<const double> weights, ExecPolicy policy) {
  const LogBins bins = nonzero_log_bins(centers, densities, weights);

  constexpr double kQLow = 1.0, kQHigh = 2.0, kQStep = 0.05, kQMax = 2.5;
  constexpr int kGrid = static_cast<int>((kQHigh - kQLow) / kQStep) + 1;

  std::vector<double> grid_sse(kGrid);
  std::vector<double> grid_beta(kGrid);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::Parallel)
#endif
  for (int i = 0; i < kGrid; ++i) {
    const double q = kQLow + kQStep * i;
    grid_beta[static_cast<std::size_t>(i)] = best_beta(bins, q);
    grid_sse[static_cast<std::size_t>(i)] =
        profiled_sse(bins, q, grid_beta[static_cast<std::size_t>(i)]).first;
  }
#ifndef _OPENMP
  (void)policy;
#endif

  int best_i = 0;
  for (int i = 1; i < kGrid; ++i) {
    if (grid_sse[static_cast<std::size_t>(i)] < grid_sse[static_cast<std::size_t>(best_i)]) {
      best_i = i;
    }
  }

  const double q_center = kQLow + kQStep * best_i;
  const double q_lo = std::max(kQLow, q_center - kQStep);
  const double q_hi = best_i == kGrid - 1 ? kQMax : std::min(kQMax, q_center + kQStep);

  const double q_best = golden_min(
      [&](double q) { return profiled_sse(bins, q, best_beta(bins, q)).first; }, q_lo, q_hi, 40);
  const double beta_best = best_beta(bins, q_best);

  // Keep the better of the refined point and its seeding grid point; a
  // non-finite or degenerate result is reported as best-so-far, not thrown.
  QGaussianFit refined = assemble_fit(bins, q_best, beta_best, true);
  QGaussianFit at_grid = assemble_fit(
      bins, q_center, grid_beta[static_cast<std::size_t>(best_i)], true);
  QGaussianFit fit = refined.residual <= at_grid.residual ? refined : at_grid;
  fit.converged = std::isfinite(fit.residual) && fit.beta_fit > 0.0;
  return fit;
}

QGaussianFit fit_qgaussian(const Histogram& h, ExecPolicy policy) {
  return fit_qgaussian(h.centers, h.densities, bin_counts(h), policy);
}

QGaussianFit fit_gaussian_reference(std::span<const double> centers,
                                    std::span<const double> densities,
                                    std::span<const double> weights) {
  const LogBins bins = nonzero_log_bins(centers, densities, weights);
  const double beta = gaussian_beta(bins);
  return assemble_fit(bins, 1.0, beta, true);
}

AvalancheSummary avalanche_statistics(std::span<const std::uint64_t> sizes) {
  if (sizes.empty()) throw InputError("avalanche stats: empty size series");

  AvalancheSummary s;
  s.max_size = 0;
  s.min_size = std::numeric_limits<std::uint64_t>::max();
  double sum = 0.0;
  for (std::uint64_t v : sizes) {
    s.max_size = std::max(s.max_size, v);
    s.min_size = std::min(s.min_size, v);
    sum += static_cast<double>(v);
  }
  s.mean_size = sum / static_cast<double>(sizes.size());
  s.decades_span =
      std::log10(static_cast<double>(s.max_size) / static_cast<double>(s.min_size));

  // Power-of-two bins: bin b covers [2^b, 2^(b+1)).
  const int top_bin = static_cast<int>(std::floor(std::log2(static_cast<double>(s.max_size))));
  s.bin_lower.resize(static_cast<std::size_t>(top_bin) + 1);
  s.counts.assign(static_cast<std::size_t>(top_bin) + 1, 0);
  for (int b = 0; b <= top_bin; ++b) {
    s.bin_lower[static_cast<std::size_t>(b)] = 1ull << b;
  }
  for (std::uint64_t v : sizes) {
    const int b = static_cast<int>(std::floor(std::log2(static_cast<double>(v))));
    s.counts[static_cast<std::size_t>(b)] += 1;
  }
  return s;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace mmsim
