#pragma once

#include <Eigen/Dense>

#include <functional>

namespace perpstat::optim {

/// f(x); non-finite values are treated as +infinity.
using Objective = std::function<double(const Eigen::VectorXd&)>;

/// f(x), writing the gradient into `grad`.
using ObjectiveWithGradient = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd& grad)>;

struct Options {
  int max_iterations = 2000;
  double f_tolerance = 1e-8;  // relative to max(1, |f|)
  double gradient_tolerance = 1e-7;
  double initial_step = 0.5;  // simplex edge length
};

struct Result {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free downhill simplex (GSL nmsimplex2). Stops when the simplex
/// collapses or f stalls for several iterations.
[[nodiscard]] Result nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Options& options = {});

/// Quasi-Newton minimization (GSL vector_bfgs2) on an analytic gradient.
[[nodiscard]] Result bfgs(const ObjectiveWithGradient& f, const Eigen::VectorXd& x0, const Options& options = {});

}  // namespace perpstat::optim
