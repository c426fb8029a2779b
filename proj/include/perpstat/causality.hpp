#pragma once

#include "perpstat/series.hpp"

#include <cstddef>
#include <string_view>
#include <utility>

namespace perpstat {

enum class CausalDirection { x_to_y, y_to_x };

[[nodiscard]] std::string_view to_string(CausalDirection d) noexcept;

struct GrangerReport {
  CausalDirection direction = CausalDirection::x_to_y;
  std::size_t lag_order = 1;
  std::size_t n_effective = 0;
  double f_statistic = 0.0;
  double p_value = 1.0;
  double level = 0.05;
  bool reject_noncausality = false;

  bool operator==(const GrangerReport&) const = default;
};

/// Nested-model F tests in both directions on the common sample t = p..n-1.
/// The restricted model regresses the target on an intercept and its own p lags;
/// the unrestricted model adds p lags of the other series. An unrestricted fit
/// with (numerically) zero residuals reports F = infinity and p = 0.
/// Returns {x->y, y->x}.
[[nodiscard]] std::pair<GrangerReport, GrangerReport> granger_test(const Series& x, const Series& y,
                                                                   std::size_t lag_order, double level = 0.05);

/// Lag in 1..max_lag minimizing the AIC of the bivariate VAR(p) with
/// intercepts, using the Gaussian system log-likelihood on a sample trimmed by
/// max_lag for every candidate. Ties go to the smaller lag.
[[nodiscard]] std::size_t select_var_lag(const Series& x, const Series& y, std::size_t max_lag);

}  // namespace perpstat
