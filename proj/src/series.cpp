#include "perpstat/series.hpp"

#include "perpstat/distributions.hpp"
#include "perpstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace perpstat {

Series::Series(std::vector<Timestamp> timestamps, std::vector<double> values, Duration cadence)
    : timestamps_(std::move(timestamps)), values_(std::move(values)), cadence_(cadence) {
  if (values_.empty()) throw Error(ErrorCode::SeriesTooShort, "series must hold at least one observation");
  if (timestamps_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidArgument, "timestamp and value counts differ");
  }
  if (cadence_ <= Duration::zero()) throw Error(ErrorCode::InvalidArgument, "cadence must be positive");
  for (std::size_t i = 1; i < timestamps_.size(); ++i) {
    const auto step = timestamps_[i] - timestamps_[i - 1];
    if (step <= Duration::zero()) {
      throw Error(ErrorCode::InvalidArgument, "timestamps not strictly increasing at index " + std::to_string(i));
    }
    if (step != cadence_) {
      throw Error(ErrorCode::UnevenSpacing, "spacing at index " + std::to_string(i) + " is " +
                                                std::to_string(step.count()) + "s, cadence is " +
                                                std::to_string(cadence_.count()) + "s");
    }
  }
}

Series Series::regular(Timestamp start, Duration cadence, std::vector<double> values) {
  std::vector<Timestamp> ts(values.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = start + cadence * static_cast<long>(i);
  return Series(std::move(ts), std::move(values), cadence);
}

Series Series::with_values(std::vector<double> values) const {
  return Series(timestamps_, std::move(values), cadence_);
}

Series Series::drop_front(std::size_t count) const {
  if (count >= size()) throw Error(ErrorCode::SeriesTooShort, "cannot drop every observation");
  return Series(std::vector<Timestamp>(timestamps_.begin() + static_cast<long>(count), timestamps_.end()),
                std::vector<double>(values_.begin() + static_cast<long>(count), values_.end()), cadence_);
}

namespace {

void require_length(const Series& s, std::size_t n, const char* what) {
  if (s.size() < n) {
    throw Error(ErrorCode::SeriesTooShort,
                std::string(what) + " needs at least " + std::to_string(n) + " observations");
  }
}

}  // namespace

Series log_returns(const Series& s) {
  require_length(s, 2, "log_returns");
  const auto v = s.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue,
                  "value at index " + std::to_string(i) + " is not positive; use first_difference");
    }
  }
  std::vector<double> out(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = std::log(v[i]) - std::log(v[i - 1]);
  return s.drop_front(1).with_values(std::move(out));
}

Series first_difference(const Series& s) {
  require_length(s, 2, "first_difference");
  const auto v = s.values();
  std::vector<double> out(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i] - v[i - 1];
  return s.drop_front(1).with_values(std::move(out));
}

Series square(const Series& s) {
  std::vector<double> out(s.values().begin(), s.values().end());
  for (double& x : out) x *= x;
  return s.with_values(std::move(out));
}

Series cumulative_sum(const Series& s) {
  std::vector<double> out(s.size());
  std::partial_sum(s.values().begin(), s.values().end(), out.begin());
  return s.with_values(std::move(out));
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double population_variance(std::span<const double> x) {
  // A constant series must come out exactly zero; rounding in the mean would not.
  if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end()) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size());
}

Series demean(const Series& s) {
  const double m = mean(s.values());
  std::vector<double> out(s.values().begin(), s.values().end());
  for (double& x : out) x -= m;
  return s.with_values(std::move(out));
}

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  if (max_lag >= n) throw Error(ErrorCode::LagTooLarge, "max_lag must be below the series length");
  const double m = mean(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  if (!(c0 > 0.0) || population_variance(x) == 0.0) {
    throw Error(ErrorCode::DegenerateSeries, "zero variance: autocorrelation undefined");
  }
  std::vector<double> r(max_lag + 1);
  r[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t t = k; t < n; ++t) ck += (x[t] - m) * (x[t - k] - m);
    r[k] = ck / c0;
  }
  return r;
}

std::vector<double> pacf_from_acf(std::span<const double> r) {
  const std::size_t max_lag = r.empty() ? 0 : r.size() - 1;
  std::vector<double> out(max_lag);
  std::vector<double> phi(max_lag + 1, 0.0);
  std::vector<double> prev(max_lag + 1, 0.0);
  double v = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double num = r[k];
    for (std::size_t j = 1; j < k; ++j) num -= prev[j] * r[k - j];
    const double phikk = v > 0.0 ? num / v : 0.0;
    phi[k] = phikk;
    for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
    v *= (1.0 - phikk * phikk);
    out[k - 1] = phikk;
    prev = phi;
  }
  return out;
}

std::vector<CorrelogramRow> correlogram(const Series& s, std::size_t max_lag) {
  const std::size_t n = s.size();
  if (max_lag == 0) throw Error(ErrorCode::InvalidArgument, "max_lag must be positive");
  if (2 * max_lag >= n) {
    throw Error(ErrorCode::LagTooLarge,
                "max_lag " + std::to_string(max_lag) + " must be below half the length " + std::to_string(n));
  }
  const auto r = acf(s.values(), max_lag);
  const auto partial = pacf_from_acf(r);
  std::vector<CorrelogramRow> rows(max_lag);
  const double nd = static_cast<double>(n);
  double q = 0.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    q += r[k] * r[k] / (nd - static_cast<double>(k));
    const double q_stat = nd * (nd + 2.0) * q;
    rows[k - 1] = CorrelogramRow{k, r[k], partial[k - 1], q_stat,
                                 dist::chi_square_sf(q_stat, static_cast<double>(k))};
  }
  return rows;
}

Series twap(const Series& s, const TwapSchedule& schedule) {
  const auto window = schedule.window;
  const auto cadence = s.cadence();
  if (window <= Duration::zero() || window % cadence != Duration::zero()) {
    throw Error(ErrorCode::InvalidArgument, "window must be a positive whole multiple of the cadence");
  }
  const long per_window = window / cadence;
  const auto window_end = [&](Timestamp t) {
    // Smallest boundary b with t <= b.
    const long offset = (t.time_since_epoch() - schedule.anchor).count();
    const long w = window.count();
    // Truncating division is already the ceiling for negative offsets.
    long k = offset / w;
    if (offset % w != 0 && offset > 0) ++k;
    return Timestamp{schedule.anchor + Duration{k * w}};
  };

  std::vector<Timestamp> ends;
  std::vector<double> averages;
  const auto v = s.values();
  const auto ts = s.timestamps();
  std::size_t i = 0;
  while (i < v.size()) {
    const Timestamp end = window_end(ts[i]);
    double sum = 0.0;
    long count = 0;
    std::size_t j = i;
    while (j < v.size() && ts[j] <= end) {
      sum += v[j];
      ++count;
      ++j;
    }
    if (count == per_window) {
      ends.push_back(end);
      averages.push_back(sum / static_cast<double>(count));
    } else if (schedule.partial == PartialWindows::reject) {
      throw Error(ErrorCode::IncompleteWindow, "window ending at epoch+" +
                                                   std::to_string(end.time_since_epoch().count()) + "s has " +
                                                   std::to_string(count) + " of " + std::to_string(per_window) +
                                                   " samples");
    }
    i = j;
  }
  if (averages.empty()) throw Error(ErrorCode::IncompleteWindow, "no complete window in the input");
  return Series(std::move(ends), std::move(averages), window);
}

}  // namespace perpstat
