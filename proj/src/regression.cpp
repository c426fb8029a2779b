#include "perpstat/regression.hpp"

#include "perpstat/distributions.hpp"
#include "perpstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace perpstat {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double gaussian_log_likelihood(double ssr, std::size_t n) {
  const double nd = static_cast<double>(n);
  return -0.5 * nd * (std::log(2.0 * std::numbers::pi) + std::log(ssr / nd) + 1.0);
}

RegressionFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& regressors, bool include_intercept) {
  const Eigen::Index n = y.size();
  if (regressors.rows() != n && regressors.cols() > 0) {
    throw Error(ErrorCode::InvalidArgument, "regressor rows do not match the dependent variable");
  }
  const Eigen::Index k = regressors.cols() + (include_intercept ? 1 : 0);
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "regression has no regressors");
  if (n <= k) {
    throw Error(ErrorCode::Underdetermined,
                std::to_string(n) + " observations cannot identify " + std::to_string(k) + " parameters");
  }

  Eigen::MatrixXd x(n, k);
  if (include_intercept) {
    x.col(0).setOnes();
    x.rightCols(regressors.cols()) = regressors;
  } else {
    x = regressors;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs().head(k);
  const double max_diag = diag.maxCoeff();
  if (!(max_diag > 0.0) || diag.minCoeff() < kRankTolerance * max_diag) {
    throw Error(ErrorCode::RankDeficient, "regressor matrix is not of full column rank");
  }

  RegressionFit fit;
  fit.n_obs = static_cast<std::size_t>(n);
  fit.n_params = static_cast<std::size_t>(k);
  fit.has_intercept = include_intercept;
  fit.coefficients = qr.solve(y);
  fit.residuals = y - x * fit.coefficients;
  fit.ssr = fit.residuals.squaredNorm();

  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd perm = qr.colsPermutation();
  const Eigen::MatrixXd xtx_inv = perm * (r_inv * r_inv.transpose()) * perm.transpose();

  const double dof = static_cast<double>(n - k);
  const double s2 = fit.ssr / dof;
  fit.standard_errors = (s2 * xtx_inv.diagonal().array()).sqrt();
  fit.t_statistics.resize(k);
  fit.p_values.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double se = fit.standard_errors(j);
    const double b = fit.coefficients(j);
    const double t = se > 0.0 ? b / se : (b == 0.0 ? 0.0 : std::copysign(kInf, b));
    fit.t_statistics(j) = t;
    fit.p_values(j) = dist::student_t_two_sided(t, dof);
  }

  double sst = 0.0;
  if (include_intercept) {
    const double ybar = y.mean();
    sst = (y.array() - ybar).square().sum();
  } else {
    sst = y.squaredNorm();
  }
  fit.r_squared = sst > 0.0 ? std::clamp(1.0 - fit.ssr / sst, 0.0, 1.0) : 0.0;

  const Eigen::Index df1 = include_intercept ? k - 1 : k;
  if (df1 == 0 || !(sst > 0.0)) {
    fit.f_statistic = 0.0;
    fit.f_pvalue = 1.0;
  } else if (fit.ssr <= 0.0) {
    fit.f_statistic = kInf;
    fit.f_pvalue = 0.0;
  } else {
    fit.f_statistic = std::max(0.0, ((sst - fit.ssr) / static_cast<double>(df1)) / s2);
    fit.f_pvalue = dist::f_sf(fit.f_statistic, static_cast<double>(df1), dof);
  }
  fit.log_likelihood = gaussian_log_likelihood(fit.ssr, fit.n_obs);
  return fit;
}

RegressionFit ols(const Series& y, const Eigen::MatrixXd& regressors, bool include_intercept) {
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.values().data(), static_cast<Eigen::Index>(y.size()));
  return ols(yv, regressors, include_intercept);
}

Series residual_series(const RegressionFit& fit, const Series& y) {
  if (static_cast<std::size_t>(fit.residuals.size()) != y.size()) {
    throw Error(ErrorCode::InvalidArgument, "residual count does not match the series");
  }
  return y.with_values(std::vector<double>(fit.residuals.data(), fit.residuals.data() + fit.residuals.size()));
}

double aic(double log_likelihood, std::size_t k) { return 2.0 * static_cast<double>(k) - 2.0 * log_likelihood; }

double aic_per_observation(double log_likelihood, std::size_t k, std::size_t n) {
  return aic(log_likelihood, k) / static_cast<double>(n);
}

SicHqc sic_hqc(double log_likelihood, std::size_t k, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "information criteria need n >= 2");
  const double kd = static_cast<double>(k);
  const double ln_n = std::log(static_cast<double>(n));
  return SicHqc{kd * ln_n - 2.0 * log_likelihood, 2.0 * kd * std::log(ln_n) - 2.0 * log_likelihood};
}

SicHqc sic_hqc_per_observation(double log_likelihood, std::size_t k, std::size_t n) {
  const auto raw = sic_hqc(log_likelihood, k, n);
  const double nd = static_cast<double>(n);
  return SicHqc{raw.sic / nd, raw.hqc / nd};
}

}  // namespace perpstat
