#pragma once

#include "perpstat/regression.hpp"
#include "perpstat/series.hpp"

#include <cstddef>
#include <vector>

namespace perpstat {

/// Engle's Lagrange-multiplier test for ARCH effects.
struct ArchTestReport {
  std::size_t lag_order = 1;
  std::size_t n_effective = 0;  // n - lag_order
  double lm_statistic = 0.0;    // n_effective * R^2, chi-square(lag_order) under the null
  double lm_pvalue = 1.0;
  double f_statistic = 0.0;  // F(lag_order, n_effective - lag_order - 1)
  double f_pvalue = 1.0;
  double r_squared = 0.0;
  double constant = 0.0;
  double constant_pvalue = 1.0;
  std::vector<double> alpha_estimates;  // coefficients on e^2_{t-1} .. e^2_{t-p}
  double level = 0.05;
  bool reject_null = false;

  bool operator==(const ArchTestReport&) const = default;
};

/// Regression of e_t^2 on a constant and e_{t-1}^2 .. e_{t-p}^2, using the
/// observations from index `first` onward (first >= p).
[[nodiscard]] RegressionFit arch_regression(std::span<const double> residuals, std::size_t lag_order,
                                            std::size_t first);

/// Runs the test on already demeaned residuals. Requires more than p + 10
/// observations and non-constant squared residuals.
[[nodiscard]] ArchTestReport arch_lm_test(const Series& residuals, std::size_t lag_order, double level = 0.05);

/// Lag in 1..max_lag minimizing AIC of the auxiliary regression. Every candidate
/// is fitted on the same sample, trimmed by max_lag; ties go to the smaller lag.
[[nodiscard]] std::size_t select_arch_lag(const Series& residuals, std::size_t max_lag);

/// Residuals of the conditional-mean model: the sample mean when ar_order is
/// 0, otherwise an AR(ar_order) with intercept (the first ar_order points are dropped).
[[nodiscard]] Series mean_residuals(const Series& s, std::size_t ar_order = 0);

}  // namespace perpstat
