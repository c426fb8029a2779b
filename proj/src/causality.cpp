#include "perpstat/causality.hpp"

#include "perpstat/distributions.hpp"
#include "perpstat/error.hpp"
#include "perpstat/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace perpstat {

namespace {

// Relative size below which the unrestricted SSR is treated as an exact fit.
constexpr double kExactFitRatio = 1e-20;

void check_pair(const Series& x, const Series& y, std::size_t lag_order) {
  if (lag_order == 0) throw Error(ErrorCode::InvalidArgument, "lag order must be positive");
  if (x.size() != y.size() || !std::equal(x.timestamps().begin(), x.timestamps().end(), y.timestamps().begin())) {
    throw Error(ErrorCode::MisalignedSeries, "series must share identical timestamps");
  }
  if (x.size() <= 3 * lag_order + 10) {
    throw Error(ErrorCode::SeriesTooShort, "Granger test with " + std::to_string(lag_order) +
                                               " lags needs more than " + std::to_string(3 * lag_order + 10) +
                                               " observations");
  }
}

// Columns: lags 1..p of `first`, then lags 1..p of `second` when requested.
Eigen::MatrixXd lag_matrix(std::span<const double> first, std::span<const double> second, std::size_t p,
                           std::size_t start, bool include_second) {
  const auto rows = static_cast<Eigen::Index>(first.size() - start);
  const auto cols = static_cast<Eigen::Index>(include_second ? 2 * p : p);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = start + static_cast<std::size_t>(r);
    for (std::size_t j = 1; j <= p; ++j) {
      m(r, static_cast<Eigen::Index>(j - 1)) = first[t - j];
      if (include_second) m(r, static_cast<Eigen::Index>(p + j - 1)) = second[t - j];
    }
  }
  return m;
}

Eigen::VectorXd target(std::span<const double> v, std::size_t start) {
  return Eigen::Map<const Eigen::VectorXd>(v.data() + start, static_cast<Eigen::Index>(v.size() - start));
}

GrangerReport one_direction(std::span<const double> cause, std::span<const double> effect, std::size_t p,
                            double level, CausalDirection direction) {
  const Eigen::VectorXd y = target(effect, p);
  const auto restricted = ols(y, lag_matrix(effect, cause, p, p, false), true);
  const auto unrestricted = ols(y, lag_matrix(effect, cause, p, p, true), true);

  GrangerReport report;
  report.direction = direction;
  report.lag_order = p;
  report.n_effective = unrestricted.n_obs;
  report.level = level;
  const double df2 = static_cast<double>(unrestricted.n_obs) - 2.0 * static_cast<double>(p) - 1.0;
  if (unrestricted.ssr <= kExactFitRatio * restricted.ssr) {
    report.f_statistic = restricted.ssr > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    const double f = ((restricted.ssr - unrestricted.ssr) / static_cast<double>(p)) / (unrestricted.ssr / df2);
    report.f_statistic = std::max(0.0, f);
  }
  report.p_value = dist::f_sf(report.f_statistic, static_cast<double>(p), df2);
  report.reject_noncausality = report.p_value < level;
  return report;
}

}  // namespace

std::string_view to_string(CausalDirection d) noexcept {
  return d == CausalDirection::x_to_y ? "x_to_y" : "y_to_x";
}

std::pair<GrangerReport, GrangerReport> granger_test(const Series& x, const Series& y, std::size_t lag_order,
                                                     double level) {
  check_pair(x, y, lag_order);
  return {one_direction(x.values(), y.values(), lag_order, level, CausalDirection::x_to_y),
          one_direction(y.values(), x.values(), lag_order, level, CausalDirection::y_to_x)};
}

std::size_t select_var_lag(const Series& x, const Series& y, std::size_t max_lag) {
  check_pair(x, y, max_lag);
  std::size_t best = 1;
  double best_aic = std::numeric_limits<double>::infinity();
  for (std::size_t p = 1; p <= max_lag; ++p) {
    const Eigen::MatrixXd regressors = lag_matrix(x.values(), y.values(), p, max_lag, true);
    const auto fx = ols(target(x.values(), max_lag), regressors, true);
    const auto fy = ols(target(y.values(), max_lag), regressors, true);
    const double t = static_cast<double>(fx.n_obs);
    Eigen::Matrix2d sigma;
    sigma(0, 0) = fx.residuals.squaredNorm() / t;
    sigma(1, 1) = fy.residuals.squaredNorm() / t;
    sigma(0, 1) = sigma(1, 0) = fx.residuals.dot(fy.residuals) / t;
    const double log_l = -0.5 * t * (2.0 * std::log(2.0 * std::numbers::pi) + std::log(sigma.determinant()) + 2.0);
    const double criterion = aic(log_l, 2 * (1 + 2 * p));
    if (criterion < best_aic) {
      best_aic = criterion;
      best = p;
    }
  }
  return best;
}

}  // namespace perpstat
