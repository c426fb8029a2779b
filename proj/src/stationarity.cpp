#include "perpstat/stationarity.hpp"

#include "perpstat/distributions.hpp"
#include "perpstat/error.hpp"
#include "perpstat/regression.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace perpstat {

namespace {

// MacKinnon (2010), single-variable case: rows are 1%, 5%, 10%;
// crit = b0 + b1/n + b2/n^2 + b3/n^3.
constexpr std::array<std::array<double, 4>, 3> kCritNone{{
    {-2.56574, -2.2358, -3.627, 0.0},
    {-1.94100, -0.2686, -3.365, 31.223},
    {-1.61682, 0.2656, -2.714, 25.364},
}};
constexpr std::array<std::array<double, 4>, 3> kCritConstant{{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};
constexpr std::array<std::array<double, 4>, 3> kCritTrend{{
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
}};

// MacKinnon (1994) p-value surface: p = Phi(poly(t)), with a small-t and a
// large-t polynomial split at tau_star and saturation outside [tau_min, tau_max].
struct PValueSurface {
  double tau_max;
  double tau_min;
  double tau_star;
  std::array<double, 3> small;
  std::array<double, 4> large;
};

constexpr PValueSurface kSurfaceNone{std::numeric_limits<double>::infinity(), -19.04, -1.04,
                                     {0.6344, 1.2378, 3.2496e-2},
                                     {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2}};
constexpr PValueSurface kSurfaceConstant{2.74, -18.83, -1.61,
                                         {2.1659, 1.4412, 3.8269e-2},
                                         {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
constexpr PValueSurface kSurfaceTrend{0.7, -16.18, -2.89,
                                      {3.2512, 1.6047, 4.9588e-2},
                                      {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

std::size_t deterministic_terms(AdfSpec spec) {
  switch (spec) {
    case AdfSpec::none: return 0;
    case AdfSpec::constant: return 1;
    case AdfSpec::constant_and_trend: return 2;
  }
  return 0;
}

struct DfRegression {
  RegressionFit fit;
  std::size_t gamma_index;
};

// Rows use diff indices i in [first, m), where d_i = s_{i+1} - s_i.
DfRegression df_regression(std::span<const double> s, std::span<const double> d, AdfSpec spec, std::size_t lags,
                           std::size_t first) {
  const std::size_t m = d.size();
  const auto rows = static_cast<Eigen::Index>(m - first);
  const bool trend = spec == AdfSpec::constant_and_trend;
  const auto cols = static_cast<Eigen::Index>(1 + lags + (trend ? 1 : 0));
  Eigen::VectorXd y(rows);
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t i = first + static_cast<std::size_t>(r);
    y(r) = d[i];
    x(r, 0) = s[i];
    for (std::size_t j = 1; j <= lags; ++j) x(r, static_cast<Eigen::Index>(j)) = d[i - j];
    if (trend) x(r, cols - 1) = static_cast<double>(r + 1);
  }
  const bool intercept = spec != AdfSpec::none;
  return DfRegression{ols(y, x, intercept), intercept ? std::size_t{1} : std::size_t{0}};
}

bool is_tabulated_level(double level) {
  return std::abs(level - 0.01) < 1e-12 || std::abs(level - 0.05) < 1e-12 || std::abs(level - 0.10) < 1e-12;
}

double critical_for_level(const CriticalValues& cv, double level) {
  if (std::abs(level - 0.01) < 1e-12) return cv.one;
  if (std::abs(level - 0.05) < 1e-12) return cv.five;
  return cv.ten;
}

}  // namespace

std::string_view to_string(AdfSpec spec) noexcept {
  switch (spec) {
    case AdfSpec::none: return "none";
    case AdfSpec::constant: return "constant";
    case AdfSpec::constant_and_trend: return "constant_and_trend";
  }
  return "unknown";
}

CriticalValues adf_critical_values(AdfSpec spec, std::size_t n) {
  const auto& table = spec == AdfSpec::none ? kCritNone : spec == AdfSpec::constant ? kCritConstant : kCritTrend;
  const double inv = 1.0 / static_cast<double>(n);
  std::array<double, 3> out{};
  for (std::size_t row = 0; row < 3; ++row) {
    const auto& b = table[row];
    out[row] = b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
  }
  return CriticalValues{out[0], out[1], out[2]};
}

double adf_pvalue(double t, AdfSpec spec) {
  const auto& surface =
      spec == AdfSpec::none ? kSurfaceNone : spec == AdfSpec::constant ? kSurfaceConstant : kSurfaceTrend;
  if (t > surface.tau_max) return 1.0;
  if (t < surface.tau_min) return 0.0;
  double z = 0.0;
  if (t <= surface.tau_star) {
    for (auto it = surface.small.rbegin(); it != surface.small.rend(); ++it) z = z * t + *it;
  } else {
    for (auto it = surface.large.rbegin(); it != surface.large.rend(); ++it) z = z * t + *it;
  }
  return dist::normal_cdf(z);
}

std::size_t schwert_max_lag(std::size_t n, AdfSpec spec) {
  const auto schwert = static_cast<std::size_t>(std::ceil(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
  const std::size_t bound = n / 2 > deterministic_terms(spec) + 1 ? n / 2 - deterministic_terms(spec) - 1 : 0;
  return std::min(schwert, bound);
}

AdfReport adf_test(const Series& s, AdfSpec spec, std::size_t max_lag, double level, LagSelection selection) {
  const std::size_t n = s.size();
  if (n < 25 + max_lag) {
    throw Error(ErrorCode::SeriesTooShort, "ADF with max_lag " + std::to_string(max_lag) + " needs at least " +
                                               std::to_string(25 + max_lag) + " observations");
  }
  if (!(population_variance(s.values()) > 0.0)) throw Error(ErrorCode::DegenerateSeries, "constant series");
  const Series diff = first_difference(s);
  if (!(population_variance(diff.values()) > 0.0)) {
    throw Error(ErrorCode::DegenerateSeries, "series has constant increments");
  }
  if (!is_tabulated_level(level)) throw Error(ErrorCode::InvalidArgument, "ADF level must be 0.01, 0.05 or 0.10");

  std::size_t lags = max_lag;
  if (selection == LagSelection::aic) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= max_lag; ++p) {
      const auto reg = df_regression(s.values(), diff.values(), spec, p, max_lag);
      const double criterion = aic(reg.fit.log_likelihood, reg.fit.n_params);
      if (criterion < best) {
        best = criterion;
        lags = p;
      }
    }
  }

  const auto reg = df_regression(s.values(), diff.values(), spec, lags, lags);
  AdfReport report;
  report.spec = spec;
  report.lag_order = lags;
  report.n_obs = reg.fit.n_obs;
  report.n_params = reg.fit.n_params;
  report.t_statistic = reg.fit.t_statistics(static_cast<Eigen::Index>(reg.gamma_index));
  report.critical_values = adf_critical_values(spec, report.n_obs);
  report.p_value = adf_pvalue(report.t_statistic, spec);
  report.level = level;
  report.reject_unit_root = report.t_statistic < critical_for_level(report.critical_values, level);
  return report;
}

std::size_t integration_order(const Series& s, AdfSpec spec, std::size_t max_lag, double level) {
  if (adf_test(s, spec, max_lag, level).reject_unit_root) return 0;
  if (adf_test(first_difference(s), spec, max_lag, level).reject_unit_root) return 1;
  return 2;
}

}  // namespace perpstat
