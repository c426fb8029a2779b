#pragma once

// Tail probabilities for the reference distributions of the test statistics.
// Thin wrappers over Boost.Math that accept infinite statistics.

namespace perpstat::dist {

[[nodiscard]] double normal_cdf(double x);

/// P(X > x) for X ~ chi-square(dof).
[[nodiscard]] double chi_square_sf(double x, double dof);

/// P(X > x) for X ~ F(d1, d2). Infinite x gives 0.
[[nodiscard]] double f_sf(double x, double d1, double d2);

/// Two-sided P(|T| > |t|) for T ~ Student t(dof).
[[nodiscard]] double student_t_two_sided(double t, double dof);

}  // namespace perpstat::dist
