#include "perpstat/volatility.hpp"

#include "perpstat/error.hpp"
#include "perpstat/optimize.hpp"
#include "perpstat/regression.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

namespace perpstat::vol {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLog2Pi = std::log(2.0 * std::numbers::pi);
const double kAbsMean = std::sqrt(2.0 / std::numbers::pi);  // E|z|
constexpr std::size_t kBurnIn = 500;
constexpr std::size_t kMinObservations = 200;
constexpr double kDeltaMin = 0.2;
constexpr double kDeltaMax = 4.0;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

std::size_t free_count(Family f) {
  switch (f) {
    case Family::garch: return 3;
    case Family::tarch:
    case Family::egarch: return 4;
    case Family::parch: return 5;
    case Family::igarch: return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Unconstrained reparameterization used by the optimizer.

Eigen::VectorXd to_theta(Family f, const Eigen::VectorXd& u) {
  Eigen::VectorXd th(static_cast<Eigen::Index>(free_count(f)));
  switch (f) {
    case Family::garch: {
      const double p = logistic(u(1));
      const double w = logistic(u(2));
      th << std::exp(u(0)), p * w, p * (1.0 - w);
      break;
    }
    case Family::tarch: {
      // persistence p = alpha + gamma/2 + beta split over (alpha/2, (alpha+gamma)/2, beta)
      const double p = logistic(u(1));
      const double m = std::max({u(2), u(3), 0.0});
      const double a = std::exp(u(2) - m), b = std::exp(u(3) - m), c = std::exp(-m);
      const double total = a + b + c;
      const double alpha = 2.0 * p * a / total;
      const double alpha_plus_gamma = 2.0 * p * b / total;
      th << std::exp(u(0)), alpha, alpha_plus_gamma - alpha, p * c / total;
      break;
    }
    case Family::egarch:
      th << u(0), u(1), u(2), std::tanh(u(3));
      break;
    case Family::parch: {
      const double p = logistic(u(1));
      const double share = logistic(u(2));
      const double gamma = std::tanh(u(3));
      const double delta = kDeltaMin + (kDeltaMax - kDeltaMin) * logistic(u(4));
      th << std::exp(u(0)), p * share / parch_kappa(gamma, delta), gamma, p * (1.0 - share), delta;
      break;
    }
    case Family::igarch:
      th << std::exp(u(0)), logistic(u(1));
      break;
  }
  return th;
}

Eigen::VectorXd to_unconstrained(Family f, const Eigen::VectorXd& th) {
  Eigen::VectorXd u(th.size());
  switch (f) {
    case Family::garch: {
      const double p = th(1) + th(2);
      u << std::log(th(0)), logit(p), logit(th(1) / p);
      break;
    }
    case Family::tarch: {
      const double p = th(1) + 0.5 * th(2) + th(3);
      const double a = th(1) / (2.0 * p), b = (th(1) + th(2)) / (2.0 * p), c = th(3) / p;
      u << std::log(th(0)), logit(p), std::log(a / c), std::log(b / c);
      break;
    }
    case Family::egarch:
      u << th(0), th(1), th(2), std::atanh(th(3));
      break;
    case Family::parch: {
      const double ak = th(1) * parch_kappa(th(2), th(4));
      const double p = ak + th(3);
      u << std::log(th(0)), logit(p), logit(ak / p), std::atanh(th(2)),
          logit((th(4) - kDeltaMin) / (kDeltaMax - kDeltaMin));
      break;
    }
    case Family::igarch:
      u << std::log(th(0)), logit(th(1));
      break;
  }
  return u;
}

// ---------------------------------------------------------------------------
// Likelihood recursions. Each accumulates d ln(sigma^2_t) / d theta in `dlog`.

struct Accumulator {
  bool with_gradient;
  bool with_variance;
  LikelihoodEval out;

  bool add(double e, double h, const Eigen::VectorXd& dlog) {
    if (!(h > 0.0) || !std::isfinite(h)) return false;
    const double ratio = e * e / h;
    out.log_likelihood += -0.5 * (kLog2Pi + std::log(h) + ratio);
    if (with_gradient) out.gradient += 0.5 * (ratio - 1.0) * dlog;
    if (with_variance) out.variance.push_back(h);
    return true;
  }
};

LikelihoodEval failed() {
  LikelihoodEval out;
  out.log_likelihood = kNegInf;
  return out;
}

LikelihoodEval garch_like(Family f, const Eigen::VectorXd& th, std::span<const double> e, double h0,
                          Accumulator acc) {
  const Eigen::Index k = th.size();
  const double omega = th(0);
  const double alpha = th(1);
  const double gamma = f == Family::tarch ? th(2) : 0.0;
  const double beta = f == Family::tarch ? th(3) : f == Family::igarch ? 1.0 - alpha : th(2);
  double h = h0;
  Eigen::VectorXd dh = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd step(k);
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (t > 0) {
      const double prev = e[t - 1];
      const double e2 = prev * prev;
      const double neg = prev < 0.0 ? 1.0 : 0.0;
      if (acc.with_gradient) {
        switch (f) {
          case Family::garch: step << 1.0, e2, h; break;
          case Family::tarch: step << 1.0, e2, neg * e2, h; break;
          default: step << 1.0, e2 - h; break;
        }
        dh = step + beta * dh;
      }
      h = omega + (alpha + gamma * neg) * e2 + beta * h;
    }
    if (!acc.add(e[t], h, acc.with_gradient ? Eigen::VectorXd(dh / h) : dh)) return failed();
  }
  return std::move(acc.out);
}

LikelihoodEval egarch_like(EgarchForm form, const Eigen::VectorXd& th, std::span<const double> e, double h0,
                           Accumulator acc) {
  const double omega = th(0), alpha = th(1), gamma = th(2), beta = th(3);
  double g = std::log(h0);
  Eigen::VectorXd dg = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd step(4);
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (t > 0) {
      const double z = e[t - 1] * std::exp(-0.5 * g);
      const double az = std::abs(z);
      const double level = form == EgarchForm::nelson ? z : z * z;
      if (acc.with_gradient) {
        // dz/dtheta = -z/2 * dg_{t-1}
        const double dlevel = form == EgarchForm::nelson ? -0.5 * z : -z * z;
        step << 1.0, level, az - kAbsMean, g;
        dg = step + (alpha * dlevel - 0.5 * gamma * az + beta) * dg;
      }
      g = omega + alpha * level + gamma * (az - kAbsMean) + beta * g;
    }
    if (!std::isfinite(g) || g > 700.0) return failed();
    if (!acc.add(e[t], std::exp(g), dg)) return failed();
  }
  return std::move(acc.out);
}

LikelihoodEval parch_like(const Eigen::VectorXd& th, std::span<const double> e, double h0, Accumulator acc) {
  const double omega = th(0), alpha = th(1), gamma = th(2), beta = th(3), delta = th(4);
  double s = std::pow(h0, 0.5 * delta);
  Eigen::VectorXd ds = Eigen::VectorXd::Zero(5);
  ds(4) = 0.5 * std::log(h0) * s;
  Eigen::VectorXd step(5);
  Eigen::VectorXd dlog(5);
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (t > 0) {
      const double prev = e[t - 1];
      const double a = std::abs(prev) - gamma * prev;
      const double ad = a > 0.0 ? std::pow(a, delta) : 0.0;
      if (acc.with_gradient) {
        const double log_a = a > 0.0 ? std::log(a) : 0.0;
        const double d_gamma = a > 0.0 ? alpha * delta * (ad / a) * (-prev) : 0.0;
        step << 1.0, ad, d_gamma, s, alpha * ad * log_a;
        ds = step + beta * ds;
      }
      s = omega + alpha * ad + beta * s;
    }
    if (!(s > 0.0) || !std::isfinite(s)) return failed();
    const double h = std::pow(s, 2.0 / delta);
    if (acc.with_gradient) {
      dlog = (2.0 / delta) * ds / s;
      dlog(4) = -(2.0 / (delta * delta)) * std::log(s) + (2.0 / delta) * ds(4) / s;
    }
    if (!acc.add(e[t], h, dlog)) return failed();
  }
  return std::move(acc.out);
}

// ---------------------------------------------------------------------------

std::vector<Eigen::VectorXd> starting_points(const ModelSpec& spec, double s2) {
  std::vector<Eigen::VectorXd> starts;
  auto add = [&](std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    starts.push_back(v);
  };
  switch (spec.family) {
    case Family::garch:
      for (auto [a, b] : {std::pair{0.05, 0.90}, {0.10, 0.80}, {0.20, 0.60}}) add({s2 * (1 - a - b), a, b});
      break;
    case Family::tarch:
      for (auto [a, g, b] : {std::tuple{0.03, 0.05, 0.90}, {0.08, 0.08, 0.75}, {0.15, 0.10, 0.50}}) {
        add({s2 * (1 - a - 0.5 * g - b), a, g, b});
      }
      break;
    case Family::egarch: {
      const double a0 = spec.egarch_form == EgarchForm::nelson ? -0.05 : 0.05;
      for (auto [a, g, b] : {std::tuple{a0, 0.15, 0.95}, {2 * a0, 0.25, 0.80}, {0.0, 0.30, 0.50}}) {
        add({(1 - b) * std::log(s2), a, g, b});
      }
      break;
    }
    case Family::parch:
      for (auto [a, g, b, d] : {std::tuple{0.08, 0.0, 0.88, 2.0}, {0.10, 0.2, 0.80, 1.0}, {0.15, 0.1, 0.70, 1.5}}) {
        add({std::pow(s2, 0.5 * d) * (1 - a * parch_kappa(g, d) - b), a, g, b, d});
      }
      break;
    case Family::igarch:
      for (double a : {0.05, 0.15, 0.30}) add({0.02 * s2, a});
      break;
  }
  return starts;
}

struct UObjective {
  ModelSpec spec;
  std::span<const double> e;
  double h0;
  double scale;  // 1/n

  double value(const Eigen::VectorXd& u) const {
    const auto th = to_theta(spec.family, u);
    if (!th.allFinite()) return std::numeric_limits<double>::infinity();
    return -scale * log_likelihood(spec, th, e, h0).log_likelihood;
  }

  double value_and_gradient(const Eigen::VectorXd& u, Eigen::VectorXd& grad) const {
    const auto th = to_theta(spec.family, u);
    grad = Eigen::VectorXd::Zero(u.size());
    if (!th.allFinite()) return std::numeric_limits<double>::infinity();
    const auto eval = log_likelihood(spec, th, e, h0, true);
    if (!std::isfinite(eval.log_likelihood)) return std::numeric_limits<double>::infinity();
    // Chain rule through the transform, Jacobian by central differences.
    constexpr double h = 1e-6;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      Eigen::VectorXd up = u, down = u;
      up(j) += h;
      down(j) -= h;
      const Eigen::VectorXd column = (to_theta(spec.family, up) - to_theta(spec.family, down)) / (2.0 * h);
      grad(j) = -scale * column.dot(eval.gradient);
    }
    return -scale * eval.log_likelihood;
  }
};

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::garch: return "garch";
    case Family::tarch: return "tarch";
    case Family::egarch: return "egarch";
    case Family::parch: return "parch";
    case Family::igarch: return "igarch";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view display_name(Family f) noexcept {
  switch (f) {
    case Family::garch: return "GARCH(1,1)";
    case Family::tarch: return "TARCH";
    case Family::egarch: return "EGARCH(1,1)";
    case Family::parch: return "PARCH(1,1,1)";
    case Family::igarch: return "IGARCH(1,1)";
  }
  return "unknown";
}

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::garch: return {"omega", "alpha", "beta"};
    case Family::tarch:
    case Family::egarch: return {"omega", "alpha", "gamma", "beta"};
    case Family::parch: return {"omega", "alpha", "gamma", "beta", "delta"};
    case Family::igarch: return {"omega", "alpha"};
  }
  return {};
}

double NamedParams::at(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw Error(ErrorCode::InvalidParams, "no parameter named '" + std::string(name) + "'");
}

Eigen::VectorXd free_params(Family f, const NamedParams& params) {
  const auto names = parameter_names(f);
  Eigen::VectorXd th(static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) th(static_cast<Eigen::Index>(i)) = params.at(names[i]);
  return th;
}

double parch_kappa(double gamma, double delta) {
  const double abs_moment =
      std::pow(2.0, 0.5 * delta) * std::tgamma(0.5 * (delta + 1.0)) / std::sqrt(std::numbers::pi);
  return 0.5 * (std::pow(1.0 - gamma, delta) + std::pow(1.0 + gamma, delta)) * abs_moment;
}

bool admissible(const ModelSpec& spec, const Eigen::VectorXd& th) {
  if (static_cast<std::size_t>(th.size()) != free_count(spec.family) || !th.allFinite()) return false;
  switch (spec.family) {
    case Family::garch:
      return th(0) > 0 && th(1) >= 0 && th(2) >= 0 && th(1) + th(2) < 1;
    case Family::tarch:
      return th(0) > 0 && th(1) >= 0 && th(1) + th(2) >= 0 && th(3) >= 0 && th(1) + 0.5 * th(2) + th(3) < 1;
    case Family::egarch:
      return std::abs(th(3)) < 1;
    case Family::parch:
      return th(0) > 0 && th(1) >= 0 && std::abs(th(2)) < 1 && th(3) >= 0 && th(4) > 0 &&
             th(1) * parch_kappa(th(2), th(4)) + th(3) < 1;
    case Family::igarch:
      return th(0) > 0 && th(1) >= 0 && th(1) <= 1;
  }
  return false;
}

LikelihoodEval log_likelihood(const ModelSpec& spec, const Eigen::VectorXd& theta, std::span<const double> e,
                              double initial_variance, bool with_gradient, bool with_variance) {
  if (!admissible(spec, theta) || !(initial_variance > 0.0)) return failed();
  Accumulator acc{with_gradient, with_variance, {}};
  if (with_gradient) acc.out.gradient = Eigen::VectorXd::Zero(theta.size());
  if (with_variance) acc.out.variance.reserve(e.size());
  switch (spec.family) {
    case Family::garch:
    case Family::tarch:
    case Family::igarch: return garch_like(spec.family, theta, e, initial_variance, std::move(acc));
    case Family::egarch: return egarch_like(spec.egarch_form, theta, e, initial_variance, std::move(acc));
    case Family::parch: return parch_like(theta, e, initial_variance, std::move(acc));
  }
  return failed();
}

InformationCriteria information_criteria(double log_likelihood, std::size_t k, std::size_t n) {
  const auto raw = sic_hqc(log_likelihood, k, n);
  const double a = aic(log_likelihood, k);
  const double nd = static_cast<double>(n);
  return InformationCriteria{a, raw.sic, raw.hqc, a / nd, raw.sic / nd, raw.hqc / nd};
}

VolatilityFit fit(const Series& returns, Family family, const FitOptions& options) {
  const std::size_t n = returns.size();
  if (n < kMinObservations) {
    throw Error(ErrorCode::SeriesTooShort, "volatility fit needs at least 200 observations");
  }
  const double h0 = population_variance(returns.values());
  if (!(h0 > 0.0)) throw Error(ErrorCode::DegenerateSeries, "returns have zero variance");
  const double mu = options.demean ? mean(returns.values()) : 0.0;
  std::vector<double> e(returns.values().begin(), returns.values().end());
  for (double& x : e) x -= mu;

  const ModelSpec spec{family, options.egarch_form};
  const UObjective objective{spec, e, h0, 1.0 / static_cast<double>(n)};
  const optim::Objective f = [&](const Eigen::VectorXd& u) { return objective.value(u); };
  const optim::ObjectiveWithGradient fg = [&](const Eigen::VectorXd& u, Eigen::VectorXd& g) {
    return objective.value_and_gradient(u, g);
  };

  optim::Options simplex_options;
  simplex_options.max_iterations = 300;
  simplex_options.f_tolerance = 1e-7;
  std::size_t iterations = 0;

  optim::Result best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& start : starting_points(spec, h0)) {
    if (!admissible(spec, start)) continue;
    auto r = optim::nelder_mead(f, to_unconstrained(family, start), simplex_options);
    iterations += static_cast<std::size_t>(r.iterations);
    if (r.value < best.value) best = std::move(r);
  }
  if (!std::isfinite(best.value)) {
    throw Error(ErrorCode::NonConvergence, "no starting point produced a finite likelihood");
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> jitter(0.0, 0.5);
  for (int restart = 0; restart < options.random_restarts; ++restart) {
    Eigen::VectorXd u = best.x;
    for (Eigen::Index j = 0; j < u.size(); ++j) u(j) += jitter(rng);
    auto r = optim::nelder_mead(f, u, simplex_options);
    iterations += static_cast<std::size_t>(r.iterations);
    if (r.value < best.value) best = std::move(r);
  }

  optim::Options quasi_newton;
  quasi_newton.f_tolerance = options.tolerance;
  quasi_newton.max_iterations = std::max(1, options.max_iterations - static_cast<int>(iterations));
  auto refined = optim::bfgs(fg, best.x, quasi_newton);
  iterations += static_cast<std::size_t>(refined.iterations);
  if (!refined.converged && static_cast<int>(iterations) < options.max_iterations) {
    // One more simplex pass from the quasi-Newton point, then polish again.
    auto again = optim::nelder_mead(f, refined.x, simplex_options);
    iterations += static_cast<std::size_t>(again.iterations);
    quasi_newton.max_iterations = std::max(1, options.max_iterations - static_cast<int>(iterations));
    auto polished = optim::bfgs(fg, again.value < refined.value ? again.x : refined.x, quasi_newton);
    iterations += static_cast<std::size_t>(polished.iterations);
    if (polished.value <= refined.value) refined = std::move(polished);
  }
  if (best.value < refined.value) refined.x = best.x;

  const Eigen::VectorXd theta = to_theta(family, refined.x);
  auto eval = log_likelihood(spec, theta, e, h0, false, true);
  if (!std::isfinite(eval.log_likelihood)) {
    throw Error(ErrorCode::NonConvergence, "optimizer ended at an inadmissible point");
  }

  NamedParams params{parameter_names(family), std::vector<double>(theta.data(), theta.data() + theta.size())};
  if (family == Family::igarch) {
    params.names.emplace_back("beta");
    params.values.push_back(1.0 - theta(1));
  }
  const std::size_t k = free_count(family) + (options.demean ? 1 : 0);
  return VolatilityFit{
      .family = family,
      .egarch_form = options.egarch_form,
      .params = std::move(params),
      .mean = mu,
      .mean_estimated = options.demean,
      .log_likelihood = eval.log_likelihood,
      .n_obs = n,
      .n_params = k,
      .criteria = information_criteria(eval.log_likelihood, k, n),
      .conditional_variance = returns.with_values(std::move(eval.variance)),
      .last_residual = e.back(),
      .initial_variance = h0,
      .converged = refined.converged && static_cast<int>(iterations) <= options.max_iterations,
      .iterations = iterations,
  };
}

ModelComparison compare(const Series& returns, std::span<const Family> families, const FitOptions& options) {
  if (families.size() < 2) throw Error(ErrorCode::InvalidArgument, "comparison needs at least two families");
  std::vector<std::future<VolatilityFit>> jobs;
  jobs.reserve(families.size());
  for (Family f : families) {
    jobs.push_back(std::async(std::launch::async, [&returns, f, &options] { return fit(returns, f, options); }));
  }
  ModelComparison out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto result = jobs[i].get();
    if (result.converged) {
      out.ranked.push_back(std::move(result));
    } else {
      out.excluded.push_back(ExcludedFit{families[i], "optimizer did not reach the tolerance within " +
                                                          std::to_string(options.max_iterations) + " iterations"});
    }
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const auto& a, const auto& b) { return a.criteria.aic < b.criteria.aic; });
  auto order_by = [&](auto key) {
    std::vector<const VolatilityFit*> sorted;
    for (const auto& r : out.ranked) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) { return key(*a) < key(*b); });
    std::vector<Family> fams;
    for (auto* r : sorted) fams.push_back(r->family);
    return fams;
  };
  out.sic_order = order_by([](const VolatilityFit& r) { return r.criteria.sic; });
  out.hqc_order = order_by([](const VolatilityFit& r) { return r.criteria.hqc; });
  return out;
}

VarianceForecast forecast(const VolatilityFit& fit, std::size_t horizon) {
  if (!fit.converged) throw Error(ErrorCode::NotConverged, "cannot forecast from an unconverged fit");
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  const double e = fit.last_residual;
  const double h = fit.conditional_variance.values().back();
  const auto& p = fit.params;
  VarianceForecast out{horizon, {}, fit.conditional_variance.back_time()};
  out.variances.reserve(horizon);
  switch (fit.family) {
    case Family::garch:
    case Family::tarch:
    case Family::igarch: {
      const double omega = p.at("omega"), alpha = p.at("alpha"), beta = p.at("beta");
      const double gamma = fit.family == Family::tarch ? p.at("gamma") : 0.0;
      double next = omega + (alpha + (e < 0.0 ? gamma : 0.0)) * e * e + beta * h;
      for (std::size_t i = 0; i < horizon; ++i) {
        out.variances.push_back(next);
        next = omega + (alpha + 0.5 * gamma + beta) * next;
      }
      break;
    }
    case Family::egarch: {
      const double omega = p.at("omega"), alpha = p.at("alpha"), gamma = p.at("gamma"), beta = p.at("beta");
      const bool nelson = fit.egarch_form == EgarchForm::nelson;
      const double z = e / std::sqrt(h);
      double g = omega + alpha * (nelson ? z : z * z) + gamma * (std::abs(z) - kAbsMean) + beta * std::log(h);
      const double expected_level = nelson ? 0.0 : 1.0;
      for (std::size_t i = 0; i < horizon; ++i) {
        out.variances.push_back(std::exp(g));
        g = omega + alpha * expected_level + beta * g;
      }
      break;
    }
    case Family::parch: {
      const double omega = p.at("omega"), alpha = p.at("alpha"), gamma = p.at("gamma"), beta = p.at("beta"),
                   delta = p.at("delta");
      const double a = std::abs(e) - gamma * e;
      double s = omega + alpha * (a > 0.0 ? std::pow(a, delta) : 0.0) + beta * std::pow(h, 0.5 * delta);
      const double persistence = alpha * parch_kappa(gamma, delta) + beta;
      for (std::size_t i = 0; i < horizon; ++i) {
        out.variances.push_back(std::pow(s, 2.0 / delta));
        s = omega + persistence * s;
      }
      break;
    }
  }
  return out;
}

Series simulate(const ModelSpec& spec, const Eigen::VectorXd& th, std::size_t n, std::uint64_t seed,
                Timestamp start, Duration cadence) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (!admissible(spec, th)) throw Error(ErrorCode::InvalidParams, "parameters outside the admissible region");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t total = n + kBurnIn;
  std::vector<double> r(total);

  // Every recursion is expressed on its own state: variance, log variance or power variance.
  double state = 0.0;
  switch (spec.family) {
    case Family::garch: state = th(0) / (1.0 - th(1) - th(2)); break;
    case Family::tarch: state = th(0) / (1.0 - th(1) - 0.5 * th(2) - th(3)); break;
    case Family::egarch: state = th(0) / (1.0 - th(3)); break;
    case Family::parch: state = th(0) / (1.0 - th(1) * parch_kappa(th(2), th(4)) - th(3)); break;
    case Family::igarch: state = th(1) > 0.0 ? th(0) / th(1) : th(0); break;
  }
  for (std::size_t t = 0; t < total; ++t) {
    double h = 0.0;
    switch (spec.family) {
      case Family::egarch: h = std::exp(state); break;
      case Family::parch: h = std::pow(state, 2.0 / th(4)); break;
      default: h = state; break;
    }
    const double sigma = std::sqrt(h);
    const double w = normal(rng);
    const double e = sigma * w;
    r[t] = e;
    switch (spec.family) {
      case Family::garch: state = th(0) + th(1) * e * e + th(2) * h; break;
      case Family::tarch: state = th(0) + (th(1) + (e < 0.0 ? th(2) : 0.0)) * e * e + th(3) * h; break;
      case Family::igarch: state = th(0) + th(1) * e * e + (1.0 - th(1)) * h; break;
      case Family::egarch: {
        const double level = spec.egarch_form == EgarchForm::nelson ? w : w * w;
        state = th(0) + th(1) * level + th(2) * (std::abs(w) - kAbsMean) + th(3) * state;
        break;
      }
      case Family::parch: {
        const double a = std::abs(e) - th(2) * e;
        state = th(0) + th(1) * std::pow(a, th(4)) + th(3) * state;
        break;
      }
    }
  }
  return Series::regular(start, cadence, std::vector<double>(r.begin() + static_cast<long>(kBurnIn), r.end()));
}

}  // namespace perpstat::vol
