#include "synthetic.hpp"

#include "perpstat/csv.hpp"

#include <cmath>
#include <fstream>
#include <random>

namespace perpstat::testing {

SyntheticMarket synthetic_market(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  constexpr double kOmega = 2e-5;
  constexpr double kAlpha = 0.5;
  constexpr double kStep = 0.01;

  std::vector<double> price(n), funding(n);
  double log_price = std::log(1000.0);
  double prev_return = 0.0;
  double a = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double r = kStep * z(rng);
    a = std::sqrt(kOmega + kAlpha * a * a) * z(rng);
    log_price += r;
    price[t] = std::exp(log_price);
    funding[t] = a + 0.3 * prev_return;
    prev_return = r;
  }
  const Timestamp start = parse_timestamp("2016-06-01T04:00:00Z");
  return {Series::regular(start, kEightHours, std::move(funding)), Series::regular(start, kEightHours, std::move(price))};
}

std::pair<std::filesystem::path, std::filesystem::path> write_market(const SyntheticMarket& m,
                                                                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto funding = dir / "funding.csv";
  const auto price = dir / "price.csv";
  std::ofstream f(funding), p(price);
  write_series_csv(f, m.funding, "funding_rate");
  write_series_csv(p, m.price, "close");
  return {funding, price};
}

}  // namespace perpstat::testing
