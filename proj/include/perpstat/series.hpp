#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

namespace perpstat {

using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

inline constexpr Duration kEightHours{8 * 3600};
inline constexpr Duration kOneMinute{60};

/// Evenly spaced, timestamped observations. Immutable once constructed.
///
/// Construction enforces the container invariants: at least one observation,
/// strictly increasing timestamps, and a constant spacing equal to `cadence`.
class Series {
 public:
  Series(std::vector<Timestamp> timestamps, std::vector<double> values, Duration cadence);

  /// Builds a series whose i-th timestamp is `start + i * cadence`.
  [[nodiscard]] static Series regular(Timestamp start, Duration cadence, std::vector<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const Timestamp> timestamps() const noexcept { return timestamps_; }
  [[nodiscard]] Duration cadence() const noexcept { return cadence_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] Timestamp front_time() const { return timestamps_.front(); }
  [[nodiscard]] Timestamp back_time() const { return timestamps_.back(); }

  /// Same timestamps and cadence, new values (sizes must match).
  [[nodiscard]] Series with_values(std::vector<double> values) const;

  /// Drops the first `count` observations.
  [[nodiscard]] Series drop_front(std::size_t count) const;

  bool operator==(const Series&) const = default;

 private:
  std::vector<Timestamp> timestamps_;
  std::vector<double> values_;
  Duration cadence_;
};

/// ln(s_t) - ln(s_{t-1}); timestamps follow the later observation.
/// Throws NonPositiveValue if any value is <= 0.
[[nodiscard]] Series log_returns(const Series& s);

/// s_t - s_{t-1}; throws SeriesTooShort below two observations.
[[nodiscard]] Series first_difference(const Series& s);

[[nodiscard]] Series square(const Series& s);

[[nodiscard]] Series cumulative_sum(const Series& s);

/// Subtracts the sample mean.
[[nodiscard]] Series demean(const Series& s);

[[nodiscard]] double mean(std::span<const double> x);

/// Divide-by-n variance about the sample mean.
[[nodiscard]] double population_variance(std::span<const double> x);

struct CorrelogramRow {
  std::size_t lag = 0;
  double acf = 0.0;
  double pacf = 0.0;
  double q_stat = 0.0;
  double q_pvalue = 1.0;

  bool operator==(const CorrelogramRow&) const = default;
};

/// Sample autocorrelations for lags 0..max_lag using the biased (1/n) autocovariance.
[[nodiscard]] std::vector<double> acf(std::span<const double> x, std::size_t max_lag);

/// Partial autocorrelations for lags 1..max_lag (index 0 holds lag 1), Durbin-Levinson.
[[nodiscard]] std::vector<double> pacf_from_acf(std::span<const double> acf_values);

/// Lags 1..max_lag with ACF, PACF and Ljung-Box Q. Requires max_lag < n/2.
[[nodiscard]] std::vector<CorrelogramRow> correlogram(const Series& s, std::size_t max_lag);

enum class PartialWindows { reject, drop };

/// Non-overlapping averaging windows that end (inclusive) at `anchor + k * window`
/// for integer k, measured from the Unix epoch. The default produces the
/// 04:00 / 12:00 / 20:00 UTC funding schedule.
struct TwapSchedule {
  Duration window = kEightHours;
  Duration anchor = Duration{4 * 3600};
  PartialWindows partial = PartialWindows::reject;
};

/// Time-weighted average per window. Windows are right-closed at the schedule
/// boundaries; the output is stamped with the window end and has cadence `window`.
/// A window that is not fully covered by the input raises IncompleteWindow unless
/// the schedule says to drop it.
[[nodiscard]] Series twap(const Series& s, const TwapSchedule& schedule = {});

}  // namespace perpstat
