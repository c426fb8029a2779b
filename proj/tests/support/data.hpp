#pragma once

#include "perpstat/series.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace perpstat::testing {

// Deterministic pseudo-noise in [-0.5, 0.5), reproducible in any language:
// frac(sin(12.9898 t + 78.233 k) * 43758.5453) - 0.5.
inline std::vector<double> hash_noise(std::size_t n, int k) {
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double x = std::sin(static_cast<double>(t) * 12.9898 + k * 78.233) * 43758.5453;
    v[t] = x - std::floor(x) - 0.5;
  }
  return v;
}

inline Series make_series(std::vector<double> values, Duration cadence = kEightHours) {
  return Series::regular(Timestamp{}, cadence, std::move(values));
}

inline std::vector<double> normal_draws(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, sd);
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

inline std::vector<double> cumsum(std::vector<double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) v[i] += v[i - 1];
  return v;
}

// e_t = sqrt(omega + sum_i alpha_i e_{t-i}^2) z_t after a 500-step burn-in.
inline std::vector<double> arch_process(std::size_t n, double omega, std::vector<double> alphas,
                                        std::uint64_t seed) {
  const std::size_t burn = 500;
  const auto z = normal_draws(n + burn, seed);
  std::vector<double> e(n + burn, 0.0);
  for (std::size_t t = 0; t < e.size(); ++t) {
    double h = omega;
    for (std::size_t i = 0; i < alphas.size() && i < t; ++i) h += alphas[i] * e[t - 1 - i] * e[t - 1 - i];
    e[t] = std::sqrt(h) * z[t];
  }
  return {e.begin() + burn, e.end()};
}

}  // namespace perpstat::testing
