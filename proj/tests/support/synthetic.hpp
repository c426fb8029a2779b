#pragma once

#include "perpstat/series.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>

namespace perpstat::testing {

/// 8-hourly market with known structure:
///   price   = 1000 * exp(random walk), log steps N(0, 0.01^2)
///   funding = a_t + 0.3 * r_{t-1}, with a_t ARCH(1) noise and r the price log return.
/// Expected outcomes: ARCH effects present, price I(1), funding I(0), and
/// price changes Granger-cause funding changes.
struct SyntheticMarket {
  Series funding;
  Series price;
};

[[nodiscard]] SyntheticMarket synthetic_market(std::uint64_t seed, std::size_t n = 3649);

/// Writes funding.csv and price.csv into `dir`; returns their paths.
std::pair<std::filesystem::path, std::filesystem::path> write_market(const SyntheticMarket& m,
                                                                      const std::filesystem::path& dir);

}  // namespace perpstat::testing
