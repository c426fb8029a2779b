#pragma once

#include "perpstat/series.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace perpstat {

/// Ordinary least squares estimates plus the summary statistics consumed by
/// the hypothesis tests. When an intercept is included it is coefficient 0.
struct RegressionFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd t_statistics;
  Eigen::VectorXd p_values;  // two-sided, Student t(n - k)
  Eigen::VectorXd residuals;
  double ssr = 0.0;
  double r_squared = 0.0;  // centered with an intercept, uncentered without
  double f_statistic = 0.0;
  double f_pvalue = 1.0;
  double log_likelihood = 0.0;  // Gaussian, at the MLE variance ssr / n
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
  bool has_intercept = false;
};

/// Least squares via column-pivoted Householder QR.
///
/// Throws Underdetermined when n_obs <= n_params and RankDeficient when a
/// diagonal entry of R falls below 1e-10 times the largest one.
[[nodiscard]] RegressionFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& regressors,
                                bool include_intercept);

[[nodiscard]] RegressionFit ols(const Series& y, const Eigen::MatrixXd& regressors, bool include_intercept);

/// Residuals of `fit` stamped with the timestamps of the dependent series.
[[nodiscard]] Series residual_series(const RegressionFit& fit, const Series& y);

/// 2k - 2 logL
[[nodiscard]] double aic(double log_likelihood, std::size_t k);
[[nodiscard]] double aic_per_observation(double log_likelihood, std::size_t k, std::size_t n);

struct SicHqc {
  double sic = 0.0;
  double hqc = 0.0;
};

/// SIC = k ln n - 2 logL, HQC = 2k ln ln n - 2 logL.
[[nodiscard]] SicHqc sic_hqc(double log_likelihood, std::size_t k, std::size_t n);
[[nodiscard]] SicHqc sic_hqc_per_observation(double log_likelihood, std::size_t k, std::size_t n);

/// Gaussian log-likelihood of n residuals with sum of squares ssr, at sigma^2 = ssr / n.
[[nodiscard]] double gaussian_log_likelihood(double ssr, std::size_t n);

}  // namespace perpstat
