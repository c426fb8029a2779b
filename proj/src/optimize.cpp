#include "perpstat/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace perpstat::optim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// GSL's line searches misbehave on +inf; a large finite value keeps them bounded.
constexpr double kPenalty = 1e300;

double sanitize(double v) { return std::isfinite(v) ? v : kPenalty; }

Eigen::Map<const Eigen::VectorXd> view(const gsl_vector* v) {
  return {v->data, static_cast<Eigen::Index>(v->size)};
}

void store(const Eigen::VectorXd& src, gsl_vector* dst) {
  for (Eigen::Index i = 0; i < src.size(); ++i) gsl_vector_set(dst, static_cast<std::size_t>(i), src(i));
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

VectorPtr make_vector(const Eigen::VectorXd& x) {
  VectorPtr v(gsl_vector_alloc(static_cast<std::size_t>(x.size())));
  store(x, v.get());
  return v;
}

// GSL reports failures through return codes; the default handler aborts.
struct QuietErrors {
  gsl_error_handler_t* previous = gsl_set_error_handler_off();
  ~QuietErrors() { gsl_set_error_handler(previous); }
};

double finite_or_inf(double v) { return v >= kPenalty ? kInf : v; }

}  // namespace

Result nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Options& options) {
  const QuietErrors quiet;
  const auto n = static_cast<std::size_t>(x0.size());
  gsl_multimin_function fn;
  fn.n = n;
  fn.params = const_cast<Objective*>(&f);
  fn.f = [](const gsl_vector* x, void* p) {
    return sanitize((*static_cast<const Objective*>(p))(Eigen::VectorXd(view(x))));
  };

  auto start = make_vector(x0);
  VectorPtr steps(gsl_vector_alloc(n));
  gsl_vector_set_all(steps.get(), options.initial_step);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> state(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(state.get(), &fn, start.get(), steps.get());

  Result result;
  constexpr double kSimplexSize = 1e-8;  // characteristic vertex distance in x
  double previous = state->fval;
  int quiet_steps = 0;
  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    const int status = gsl_multimin_fminimizer_iterate(state.get());
    if (status != GSL_SUCCESS) break;
    const double current = state->fval;
    const bool flat = std::abs(previous - current) <= options.f_tolerance * std::max(1.0, std::abs(current));
    quiet_steps = flat ? quiet_steps + 1 : 0;
    previous = current;
    if (gsl_multimin_fminimizer_size(state.get()) <= kSimplexSize || quiet_steps > 2 * static_cast<int>(n) + 2) {
      result.converged = current < kPenalty;
      ++result.iterations;
      break;
    }
  }
  result.x = view(state->x);
  result.value = finite_or_inf(state->fval);
  return result;
}

Result bfgs(const ObjectiveWithGradient& f, const Eigen::VectorXd& x0, const Options& options) {
  const QuietErrors quiet;
  const auto n = static_cast<std::size_t>(x0.size());
  gsl_multimin_function_fdf fn;
  fn.n = n;
  fn.params = const_cast<ObjectiveWithGradient*>(&f);
  fn.fdf = [](const gsl_vector* x, void* p, double* value, gsl_vector* g) {
    Eigen::VectorXd grad(static_cast<Eigen::Index>(x->size));
    *value = sanitize((*static_cast<const ObjectiveWithGradient*>(p))(Eigen::VectorXd(view(x)), grad));
    if (*value >= kPenalty || !grad.allFinite()) grad.setZero();
    store(grad, g);
  };
  fn.f = [](const gsl_vector* x, void* p) {
    Eigen::VectorXd grad(static_cast<Eigen::Index>(x->size));
    return sanitize((*static_cast<const ObjectiveWithGradient*>(p))(Eigen::VectorXd(view(x)), grad));
  };
  fn.df = [](const gsl_vector* x, void* p, gsl_vector* g) {
    Eigen::VectorXd grad(static_cast<Eigen::Index>(x->size));
    const double value = sanitize((*static_cast<const ObjectiveWithGradient*>(p))(Eigen::VectorXd(view(x)), grad));
    if (value >= kPenalty || !grad.allFinite()) grad.setZero();
    store(grad, g);
  };

  Result result;
  result.x = x0;
  Eigen::VectorXd grad0(x0.size());
  result.value = f(x0, grad0);
  if (!std::isfinite(result.value)) {
    result.value = kInf;
    return result;
  }

  auto start = make_vector(x0);
  std::unique_ptr<gsl_multimin_fdfminimizer, decltype(&gsl_multimin_fdfminimizer_free)> state(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n), &gsl_multimin_fdfminimizer_free);
  gsl_multimin_fdfminimizer_set(state.get(), &fn, start.get(), 0.1, 0.1);

  auto gradient_small = [&] {
    return gsl_multimin_test_gradient(state->gradient,
                                      options.gradient_tolerance * std::max(1.0, std::abs(state->f))) == GSL_SUCCESS;
  };
  double previous = state->f;
  int quiet_steps = 0;
  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    if (gradient_small()) {
      result.converged = true;
      break;
    }
    const int status = gsl_multimin_fdfminimizer_iterate(state.get());
    if (status != GSL_SUCCESS) {
      // No further progress along the search direction: accept only if the
      // gradient is already at the level of round-off in f.
      result.converged =
          gsl_multimin_test_gradient(state->gradient, 1e-3 * std::max(1.0, std::abs(state->f))) == GSL_SUCCESS;
      break;
    }
    const double current = state->f;
    if (std::abs(previous - current) <= options.f_tolerance * std::max(1.0, std::abs(current))) {
      if (++quiet_steps >= 2) {
        result.converged = true;
        ++result.iterations;
        break;
      }
    } else {
      quiet_steps = 0;
    }
    previous = current;
  }
  result.x = view(state->x);
  result.value = finite_or_inf(state->f);
  return result;
}

}  // namespace perpstat::optim
