#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmsim/exec.hpp"

namespace mmsim {

// Log-returns and their standardization by the whole-series mean and
// population standard deviation.
struct ReturnsSeries {
  std::vector<double> raw;
  std::vector<double> normalized;
  double mean = 0.0;
  double stdev = 0.0;
};

ReturnsSeries normalized_returns(std::span<const double> prices);

// p(t) = p1(t) * q1 / (q1 + q2) + p2(t) * q2 / (q1 + q2)
std::vector<double> weighted_average_price(std::span<const double> p1,
                                           std::span<const double> p2, long q1_0, long q2_0);

// Histogram over a symmetric range of bins centered at integer multiples of
// bin_width; densities integrate to exactly 1.
struct Histogram {
  std::vector<double> centers;
  std::vector<double> densities;
  double bin_width = 0.0;
  std::size_t count = 0;
};

inline constexpr double kDefaultBinWidth = 0.2;

Histogram empirical_pdf(std::span<const double> samples, double bin_width = kDefaultBinWidth);

// Per-bin sample counts, recovered from the densities.
std::vector<double> bin_counts(const Histogram& h);

// Fourth standardized central moment minus 3, population moments.
double excess_kurtosis(std::span<const double> samples);

// y = amp * (1 - (1 - q) * beta * x^2)^(1 / (1 - q)); q -> 1 is the Gaussian
// amp * exp(-beta * x^2).
double qgaussian_pdf(double x, double q, double beta, double amp);

struct QGaussianFit {
  double q = 1.0;
  double beta_fit = 0.0;
  double amp = 0.0;
  double residual = 0.0;  // sum of squared log-density errors
  bool converged = false;
};

// Least-squares fit of (amp, beta, q) on log densities over the nonzero
// bins: q grid 1.0..2.0 step 0.05, then local golden-section refinement
// bounded to q in [1, 2.5]. Requires >= 8 nonzero bins. Empty weights give
// every nonzero bin weight 1; passing the bin counts weights each bin by
// the inverse variance of its log density, which removes the fat-tail bias
// that sparse single-count bins would otherwise inject.
QGaussianFit fit_qgaussian(std::span<const double> centers, std::span<const double> densities,
                           std::span<const double> weights = {},
                           ExecPolicy policy = ExecPolicy::Serial);

// Count-weighted fit of a sample histogram; the canonical pipeline entry.
QGaussianFit fit_qgaussian(const Histogram& h, ExecPolicy policy = ExecPolicy::Serial);

// Least-squares fit of (amp, beta) with q pinned to 1, for nested-model
// comparisons under the same weighting.
QGaussianFit fit_gaussian_reference(std::span<const double> centers,
                                    std::span<const double> densities,
                                    std::span<const double> weights = {});

struct AvalancheSummary {
  std::vector<std::uint64_t> bin_lower;  // power-of-two bin lower edges
  std::vector<std::uint64_t> counts;
  std::uint64_t max_size = 0;
  std::uint64_t min_size = 0;
  double mean_size = 0.0;
  double decades_span = 0.0;  // log10(max / min)
};

AvalancheSummary avalanche_statistics(std::span<const std::uint64_t> sizes);

// Midpoint median; the input is copied and sorted.
double median(std::vector<double> values);

}  // namespace mmsim
