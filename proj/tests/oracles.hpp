// Test-only reference samplers, independent of the library code they check.
#pragma once

#include <cmath>
#include <vector>

#include "mmsim/rng.hpp"

namespace oracles {

inline std::vector<double> standard_normal(std::size_t n, std::uint64_t seed) {
  auto rng = mmsim::rng::derive(seed, mmsim::rng::Tag::Oracle, 1);
  std::vector<double> out(n);
  for (double& x : out) x = rng.normal(0.0, 1.0);
  return out;
}

// Student-t via Z / sqrt(V / df) with V a sum of df squared normals.
inline std::vector<double> student_t(std::size_t n, int df, std::uint64_t seed) {
  auto rng = mmsim::rng::derive(seed, mmsim::rng::Tag::Oracle, 2);
  std::vector<double> out(n);
  for (double& x : out) {
    double v = 0.0;
    for (int k = 0; k < df; ++k) {
      const double z = rng.normal(0.0, 1.0);
      v += z * z;
    }
    x = rng.normal(0.0, 1.0) / std::sqrt(v / df);
  }
  return out;
}

// Exact accept-reject sampler for the density proportional to
// (1 + (q-1) beta x^2)^(-1/(q-1)), 1 < q < 2.
//
// With y = x * sqrt((q-1) beta) the target over a standard Cauchy proposal
// has ratio proportional to (1 + y^2)^(1 - 1/(q-1)), which peaks at y = 0,
// so accepting with that probability is exact.
inline std::vector<double> qgaussian(std::size_t n, double q, double beta, std::uint64_t seed) {
  auto rng = mmsim::rng::derive(seed, mmsim::rng::Tag::Oracle, 3);
  const double exponent = 1.0 - 1.0 / (q - 1.0);
  const double scale = 1.0 / std::sqrt((q - 1.0) * beta);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double y = std::tan(M_PI * (rng.next_double() - 0.5));
    const double accept = std::pow(1.0 + y * y, exponent);
    if (rng.next_double() < accept) out.push_back(y * scale);
  }
  return out;
}

}  // namespace oracles
