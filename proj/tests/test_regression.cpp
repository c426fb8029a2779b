#include "catch_amalgamated.hpp"

#include "data.hpp"
#include "perpstat/error.hpp"
#include "perpstat/regression.hpp"

#include <cmath>
#include <numbers>

using namespace perpstat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("exact linear relation", "[regression]") {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(10, 1, 10);
  auto fit = ols(Eigen::VectorXd(2 * x), x, true);
  CHECK_THAT(fit.coefficients(0), WithinAbs(0.0, 1e-12));
  CHECK_THAT(fit.coefficients(1), WithinAbs(2.0, 1e-12));
  CHECK_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
  CHECK(fit.residuals.size() == 10);
}

TEST_CASE("intercept-only fit of a constant", "[regression]") {
  Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 3.5);
  auto fit = ols(y, Eigen::MatrixXd(20, 0), true);
  CHECK_THAT(fit.coefficients(0), WithinAbs(3.5, 1e-14));
  CHECK(fit.r_squared == 0.0);
}

TEST_CASE("noisy line matches the normal equations", "[regression]") {
  const std::size_t n = 1000;
  auto noise = perpstat::testing::normal_draws(n, 42);
  Eigen::VectorXd x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x(i) = static_cast<double>(i) / n * 10.0;
    y(i) = 3 + 2 * x(i) + noise[i];
  }
  auto fit = ols(y, x, true);
  CHECK_THAT(fit.coefficients(0), WithinAbs(3.0, 0.15));
  CHECK_THAT(fit.coefficients(1), WithinAbs(2.0, 0.15));

  Eigen::MatrixXd X(n, 2);
  X.col(0).setOnes();
  X.col(1) = x;
  const Eigen::VectorXd beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
  CHECK_THAT(fit.coefficients(0), WithinRel(beta(0), 1e-9));
  CHECK_THAT(fit.coefficients(1), WithinRel(beta(1), 1e-9));

  const Eigen::VectorXd e = y - X * beta;
  const double s2 = e.squaredNorm() / (n - 2);
  const Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
  CHECK_THAT(fit.standard_errors(1), WithinRel(std::sqrt(cov(1, 1)), 1e-8));
  const double ll = -0.5 * n * (std::log(2 * std::numbers::pi) + std::log(e.squaredNorm() / n) + 1);
  CHECK_THAT(fit.log_likelihood, WithinRel(ll, 1e-12));
  CHECK(std::abs(fit.residuals.sum()) <= 1e-8 * n);
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
}

TEST_CASE("noiseless data is recovered exactly", "[regression][property]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index n = 60, k = 4;
    auto draws = perpstat::testing::normal_draws(n * k + k, seed);
    Eigen::MatrixXd X = Eigen::Map<Eigen::MatrixXd>(draws.data(), n, k);
    Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(draws.data() + n * k, k);
    auto fit = ols(Eigen::VectorXd(1.5 + (X * b).array()), X, true);
    CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THAT(fit.coefficients(0), WithinAbs(1.5, 1e-9));
  }
}

TEST_CASE("adding a regressor never lowers R squared", "[regression][property]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index n = 80;
    auto d = perpstat::testing::normal_draws(n * 6, 100 + seed);
    Eigen::MatrixXd X = Eigen::Map<Eigen::MatrixXd>(d.data(), n, 5);
    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(d.data() + n * 5, n) + 0.3 * X.col(0);
    double prev = 0.0;
    for (Eigen::Index k = 1; k <= 5; ++k) {
      const double r2 = ols(y, X.leftCols(k), true).r_squared;
      CHECK(r2 >= prev - 1e-12);
      prev = r2;
    }
  }
}

TEST_CASE("F test size under zero slopes", "[regression][property]") {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto d = perpstat::testing::normal_draws(500 * 3, 5000 + seed);
    Eigen::MatrixXd X = Eigen::Map<Eigen::MatrixXd>(d.data(), 500, 2);
    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(d.data() + 1000, 500);
    rejections += ols(y, X, true).f_pvalue < 0.05;
  }
  const double rate = rejections / 200.0;
  CHECK(rate >= 0.02);
  CHECK(rate <= 0.09);
}

TEST_CASE("regression errors", "[regression]") {
  Eigen::MatrixXd X(5, 2);
  X << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;
  CHECK(code_of([&] { (void)ols(Eigen::VectorXd::Random(5), X, true); }) == ErrorCode::RankDeficient);
  CHECK(code_of([] { (void)ols(Eigen::VectorXd::Random(3), Eigen::MatrixXd::Random(3, 3), false); }) ==
        ErrorCode::Underdetermined);
}

TEST_CASE("information criteria hand values", "[regression][criteria]") {
  CHECK(aic(-100, 2) == 204.0);
  CHECK(aic(0, 0) == 0.0);
  // One extra parameter buying 0.5 of log-likelihood raises AIC by exactly 1.
  CHECK(aic(-99.5, 3) - aic(-100, 2) == 1.0);

  auto s = sic_hqc(-100, 2, 100);
  CHECK_THAT(s.sic, WithinAbs(209.21034037197617, 1e-9));
  CHECK_THAT(s.hqc, WithinAbs(206.10871850323161, 1e-9));

  auto zero = sic_hqc(-37.25, 0, 50);
  CHECK(zero.sic == 74.5);
  CHECK(zero.hqc == 74.5);

  // At n = 16, ln ln n is about 1.02, close to the e^e coincidence where HQC equals AIC.
  auto near = sic_hqc(-10, 3, 16);
  CHECK_THAT(near.hqc, WithinAbs(aic(-10, 3), 0.15));

  CHECK(aic_per_observation(-100, 2, 100) == 2.04);
  auto per = sic_hqc_per_observation(-100, 2, 100);
  CHECK(per.sic == s.sic / 100);
  CHECK(per.hqc == s.hqc / 100);
}

TEST_CASE("criteria orderings", "[regression][criteria][property]") {
  const double lls[] = {-120.0, -101.3, -100.0, -99.9};
  for (std::size_t n : {8u, 20u, 500u}) {
    for (double a : lls) {
      for (double b : lls) {
        // Equal k: all three criteria rank identically.
        const bool by_aic = aic(a, 3) < aic(b, 3);
        CHECK(by_aic == (sic_hqc(a, 3, n).sic < sic_hqc(b, 3, n).sic));
        CHECK(by_aic == (sic_hqc(a, 3, n).hqc < sic_hqc(b, 3, n).hqc));
      }
      // SIC's penalty per parameter is at least AIC's once n >= 8.
      CHECK(sic_hqc(a, 5, n).sic - sic_hqc(a, 2, n).sic >= aic(a, 5) - aic(a, 2));
    }
  }
}
