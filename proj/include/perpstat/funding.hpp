#pragma once

#include "perpstat/series.hpp"

#include <string>
#include <vector>

namespace perpstat::funding {

/// Width of the interest/premium dampener: |F - P| <= 0.05% before capping.
inline constexpr double kDampener = 0.0005;
/// |F| is capped at this fraction of (initial - maintenance) margin.
inline constexpr double kCapFraction = 0.75;

struct InterestInputs {
  double quote_index = 0.0;  // daily borrow rate of the quote currency
  double base_index = 0.0;   // daily borrow rate of the base currency
  int funding_interval_count = 3;
};

struct PremiumInputs {
  double impact_bid_price = 0.0;
  double impact_ask_price = 0.0;
  double mark_price = 0.0;
  double spot_price = 0.0;  // index price
  double current_funding_rate = 0.0;
  Duration time_until_funding{0};
};

/// Which denominator the premium index divides by.
///   literal:  spot + index * (1 + funding_basis)
///   exchange: spot * (1 + funding_basis)
enum class DenominatorMode { literal, exchange };

struct MarginConfig {
  double initial_margin = 0.01;
  double maintenance_margin = 0.005;
};

struct FundingBreakdown {
  double interest_component = 0.0;
  double premium_index = 0.0;
  double clamp_value = 0.0;
  double funding_rate = 0.0;
  bool capped = false;
  double cap_bound = 0.0;

  bool operator==(const FundingBreakdown&) const = default;
};

/// (quote_index - base_index) / funding_interval_count.
[[nodiscard]] double interest_rate(const InterestInputs& inputs);

/// Funding basis over the remaining fraction of the 8h funding interval.
[[nodiscard]] double funding_basis(const PremiumInputs& inputs);

[[nodiscard]] double premium_index(const PremiumInputs& inputs,
                                   DenominatorMode mode = DenominatorMode::literal);

/// min(hi, max(lo, x)); throws InvertedBounds when lo > hi.
[[nodiscard]] double clamp(double x, double hi, double lo);

/// F = P + clamp(I - P, +0.05%, -0.05%), then |F| <= 0.75 * (IM - MM).
/// Inputs are the 8-hour averages of the interest and premium components.
[[nodiscard]] FundingBreakdown funding_rate(double interest, double premium_twap, const MarginConfig& margin);

/// Amount paid by the holder of a position with signed value `position_value`
/// (positive for longs, negative for shorts). A negative result is received.
[[nodiscard]] double funding_payment(double position_value, const FundingBreakdown& breakdown);

void validate(const MarginConfig& margin);

struct PeriodFunding {
  Timestamp funding_time;
  FundingBreakdown breakdown;
};

/// Averages minute-level interest and premium samples over each funding window
/// and computes the breakdown for every window.
[[nodiscard]] std::vector<PeriodFunding> compute_periods(const Series& interest, const Series& premium,
                                                         const MarginConfig& margin,
                                                         const TwapSchedule& schedule = {});

}  // namespace perpstat::funding
