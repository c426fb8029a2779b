#pragma once

#include "perpstat/series.hpp"

#include <cstddef>
#include <string_view>

namespace perpstat {

/// Deterministic terms in the Dickey-Fuller regression.
enum class AdfSpec { none, constant, constant_and_trend };

[[nodiscard]] std::string_view to_string(AdfSpec spec) noexcept;

enum class LagSelection { aic, fixed };

struct CriticalValues {
  double one = 0.0;
  double five = 0.0;
  double ten = 0.0;

  bool operator==(const CriticalValues&) const = default;
};

struct AdfReport {
  AdfSpec spec = AdfSpec::constant;
  std::size_t lag_order = 0;
  std::size_t n_obs = 0;     // rows in the final regression
  std::size_t n_params = 0;  // regressors including deterministic terms
  double t_statistic = 0.0;
  CriticalValues critical_values;
  double p_value = 1.0;
  double level = 0.05;
  bool reject_unit_root = false;
  std::size_t differencing_level = 0;

  bool operator==(const AdfReport&) const = default;
};

/// MacKinnon (2010) response-surface critical values for a regression with n rows.
[[nodiscard]] CriticalValues adf_critical_values(AdfSpec spec, std::size_t n);

/// MacKinnon (1994) asymptotic p-value of a Dickey-Fuller t statistic.
[[nodiscard]] double adf_pvalue(double t_statistic, AdfSpec spec);

/// Default lag ceiling: ceil(12 (n/100)^(1/4)), bounded by the sample.
[[nodiscard]] std::size_t schwert_max_lag(std::size_t n, AdfSpec spec);

/// Regresses ds_t on s_{t-1}, ds_{t-1..t-p} and the deterministic terms.
///
/// With LagSelection::aic, p is chosen on a common sample trimmed by max_lag
/// (ties toward the smaller lag) and the chosen model is refitted on the full
/// sample. `level` must be 0.01, 0.05 or 0.10; the decision compares the
/// t statistic with the matching critical value.
[[nodiscard]] AdfReport adf_test(const Series& s, AdfSpec spec, std::size_t max_lag, double level = 0.05,
                                 LagSelection selection = LagSelection::aic);

/// 0 if the level rejects a unit root, 1 if the first difference does,
/// otherwise 2 (meaning "at least 2").
[[nodiscard]] std::size_t integration_order(const Series& s, AdfSpec spec, std::size_t max_lag,
                                            double level = 0.05);

}  // namespace perpstat
