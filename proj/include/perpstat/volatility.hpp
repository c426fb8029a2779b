#pragma once

#include "perpstat/series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perpstat::vol {

/// Conditional-variance recursions, driven by e_{t-1} and sigma^2_{t-1}:
///
///   garch   s2_t = w + a e^2 + b s2
///   tarch   s2_t = w + a e^2 + g e^2 1[e < 0] + b s2                 (GJR form)
///   egarch  ln s2_t = w + a z + g (|z| - sqrt(2/pi)) + b ln s2,  z = e / s
///           (EgarchForm::squared replaces a z by a z^2)
///   parch   s_t^d = w + a (|e| - g e)^d + b s^d
///   igarch  s2_t = w + a e^2 + (1 - a) s2
enum class Family { garch, tarch, egarch, parch, igarch };

enum class EgarchForm { nelson, squared };

inline constexpr Family kAllFamilies[] = {Family::garch, Family::tarch, Family::egarch, Family::parch,
                                          Family::igarch};

[[nodiscard]] std::string_view to_string(Family f) noexcept;
[[nodiscard]] std::optional<Family> parse_family(std::string_view name);
[[nodiscard]] std::string_view display_name(Family f) noexcept;  // "GARCH(1,1)", "TARCH", ...

struct ModelSpec {
  Family family = Family::garch;
  EgarchForm egarch_form = EgarchForm::nelson;
};

/// Names of the free parameters, in the order used by every function below:
/// garch (omega, alpha, beta), tarch/egarch (omega, alpha, gamma, beta),
/// parch (omega, alpha, gamma, beta, delta), igarch (omega, alpha).
[[nodiscard]] std::vector<std::string> parameter_names(Family f);

struct NamedParams {
  std::vector<std::string> names;
  std::vector<double> values;

  [[nodiscard]] double at(std::string_view name) const;
  bool operator==(const NamedParams&) const = default;
};

/// Builds the free-parameter vector for `f` from name/value pairs.
[[nodiscard]] Eigen::VectorXd free_params(Family f, const NamedParams& params);

/// Whether the parameters lie in the family's admissible region (positivity
/// and covariance stationarity; unit persistence for igarch).
[[nodiscard]] bool admissible(const ModelSpec& spec, const Eigen::VectorXd& theta);

/// E[(|z| - g z)^d] for standard normal z.
[[nodiscard]] double parch_kappa(double gamma, double delta);

struct LikelihoodEval {
  double log_likelihood = 0.0;
  Eigen::VectorXd gradient;        // d logL / d theta, when requested
  std::vector<double> variance;    // sigma^2_t path, when requested
};

/// Gaussian log-likelihood sum_t -1/2 (ln 2pi + ln s2_t + e_t^2 / s2_t) with the
/// recursion started at s2_0 = initial_variance. Inadmissible parameters or a
/// non-positive variance give -infinity.
[[nodiscard]] LikelihoodEval log_likelihood(const ModelSpec& spec, const Eigen::VectorXd& theta,
                                            std::span<const double> residuals, double initial_variance,
                                            bool with_gradient = false, bool with_variance = false);

struct FitOptions {
  bool demean = true;  // subtract the sample mean and count it as a parameter
  EgarchForm egarch_form = EgarchForm::nelson;
  std::uint64_t seed = 0;  // drives the randomized restarts
  int random_restarts = 1;
  int max_iterations = 2000;
  double tolerance = 1e-8;
};

struct InformationCriteria {
  double aic = 0.0;
  double sic = 0.0;
  double hqc = 0.0;
  double aic_per_obs = 0.0;
  double sic_per_obs = 0.0;
  double hqc_per_obs = 0.0;

  bool operator==(const InformationCriteria&) const = default;
};

struct VolatilityFit {
  Family family = Family::garch;
  EgarchForm egarch_form = EgarchForm::nelson;
  NamedParams params;  // free parameters plus the implied beta for igarch
  double mean = 0.0;
  bool mean_estimated = true;
  double log_likelihood = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
  InformationCriteria criteria;
  Series conditional_variance;
  double last_residual = 0.0;
  double initial_variance = 0.0;
  bool converged = false;
  std::size_t iterations = 0;

  bool operator==(const VolatilityFit&) const = default;
};

[[nodiscard]] InformationCriteria information_criteria(double log_likelihood, std::size_t k, std::size_t n);

/// Maximum-likelihood fit under Gaussian innovations.
///
/// Several fixed starting points plus seeded random restarts are polished with
/// Nelder-Mead in an unconstrained reparameterization (log for omega,
/// logistic for persistence), and the best is refined with BFGS on the
/// analytic gradient. A fit that misses the tolerance is returned with
/// converged = false. Requires at least 200 observations.
[[nodiscard]] VolatilityFit fit(const Series& returns, Family family, const FitOptions& options = {});

struct ExcludedFit {
  Family family;
  std::string reason;

  bool operator==(const ExcludedFit&) const = default;
};

struct ModelComparison {
  std::vector<VolatilityFit> ranked;  // ascending AIC
  std::vector<ExcludedFit> excluded;
  std::vector<Family> sic_order;
  std::vector<Family> hqc_order;

  bool operator==(const ModelComparison&) const = default;
};

/// Fits every family (concurrently) and ranks the converged fits by AIC.
[[nodiscard]] ModelComparison compare(const Series& returns, std::span<const Family> families,
                                      const FitOptions& options = {});

struct VarianceForecast {
  std::size_t horizon = 0;
  std::vector<double> variances;
  Timestamp origin_timestamp;

  bool operator==(const VarianceForecast&) const = default;
};

/// Iterates the fitted recursion forward; the first step uses the last
/// in-sample residual, later steps replace shocks by their expectations
/// (E z^2 = 1, E z = 0, E|z| = sqrt(2/pi)). Throws NotConverged for unconverged fits.
[[nodiscard]] VarianceForecast forecast(const VolatilityFit& fit, std::size_t horizon);

/// Simulates r_t = sigma_t w_t with Gaussian w_t, discarding a 500-step burn-in.
/// Deterministic for a given seed. Throws InvalidParams outside the admissible region.
[[nodiscard]] Series simulate(const ModelSpec& spec, const Eigen::VectorXd& theta, std::size_t n,
                              std::uint64_t seed, Timestamp start = Timestamp{}, Duration cadence = kEightHours);

}  // namespace perpstat::vol
