#include "perpstat/funding.hpp"

#include "perpstat/error.hpp"

#include <algorithm>
#include <cmath>

namespace perpstat::funding {

double interest_rate(const InterestInputs& inputs) {
  if (inputs.funding_interval_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "funding_interval_count must be at least 1");
  }
  return (inputs.quote_index - inputs.base_index) / inputs.funding_interval_count;
}

double funding_basis(const PremiumInputs& inputs) {
  // The interval here is the 8h funding period length, not the per-day count.
  const double remaining = std::chrono::duration<double>(inputs.time_until_funding) /
                           std::chrono::duration<double>(kEightHours);
  return inputs.current_funding_rate * remaining;
}

double premium_index(const PremiumInputs& in, DenominatorMode mode) {
  if (!(in.impact_bid_price > 0.0 && in.impact_ask_price > 0.0 && in.mark_price > 0.0 && in.spot_price > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "prices must be strictly positive");
  }
  if (in.impact_bid_price > in.impact_ask_price) {
    throw Error(ErrorCode::InvalidArgument, "impact bid price exceeds impact ask price");
  }
  if (in.time_until_funding < Duration::zero() || in.time_until_funding > kEightHours) {
    throw Error(ErrorCode::InvalidArgument, "time until funding must lie within one 8h interval");
  }
  const double basis = funding_basis(in);
  const double fair_basis = in.spot_price * (1.0 + basis);
  const double denominator = mode == DenominatorMode::literal ? in.spot_price + fair_basis : fair_basis;
  if (denominator == 0.0 || !std::isfinite(denominator)) {
    throw Error(ErrorCode::ZeroDenominator, "premium index denominator is zero");
  }
  const double numerator =
      std::max(0.0, in.impact_bid_price - in.mark_price) - std::max(0.0, in.mark_price - in.impact_ask_price);
  return numerator / denominator;
}

double clamp(double x, double hi, double lo) {
  if (lo > hi) throw Error(ErrorCode::InvertedBounds, "clamp lower bound exceeds upper bound");
  return std::min(hi, std::max(lo, x));
}

void validate(const MarginConfig& margin) {
  if (!(0.0 < margin.maintenance_margin && margin.maintenance_margin < margin.initial_margin &&
        margin.initial_margin < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "margins must satisfy 0 < maintenance < initial < 1");
  }
}

FundingBreakdown funding_rate(double interest, double premium_twap, const MarginConfig& margin) {
  validate(margin);
  FundingBreakdown out;
  out.interest_component = interest;
  out.premium_index = premium_twap;
  out.clamp_value = clamp(interest - premium_twap, kDampener, -kDampener);
  out.cap_bound = kCapFraction * (margin.initial_margin - margin.maintenance_margin);
  const double uncapped = premium_twap + out.clamp_value;
  out.capped = std::abs(uncapped) > out.cap_bound;
  out.funding_rate = out.capped ? std::copysign(out.cap_bound, uncapped) : uncapped;
  return out;
}

double funding_payment(double position_value, const FundingBreakdown& breakdown) {
  return position_value * breakdown.funding_rate;
}

std::vector<PeriodFunding> compute_periods(const Series& interest, const Series& premium,
                                           const MarginConfig& margin, const TwapSchedule& schedule) {
  if (interest.timestamps().size() != premium.timestamps().size() ||
      !std::equal(interest.timestamps().begin(), interest.timestamps().end(), premium.timestamps().begin())) {
    throw Error(ErrorCode::MisalignedSeries, "interest and premium samples must share timestamps");
  }
  const Series i_avg = twap(interest, schedule);
  const Series p_avg = twap(premium, schedule);
  std::vector<PeriodFunding> out;
  out.reserve(i_avg.size());
  for (std::size_t k = 0; k < i_avg.size(); ++k) {
    out.push_back(PeriodFunding{i_avg.timestamps()[k], funding_rate(i_avg[k], p_avg[k], margin)});
  }
  return out;
}

}  // namespace perpstat::funding
