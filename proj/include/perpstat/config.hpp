#pragma once

#include "perpstat/csv.hpp"
#include "perpstat/stationarity.hpp"
#include "perpstat/volatility.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perpstat {

struct StageToggles {
  bool arch = true;
  bool adf = true;
  bool granger = true;
  bool model_comparison = true;
  bool forecast = true;  // nested in model_comparison
  bool diagnostics = true;

  bool operator==(const StageToggles&) const = default;
};

/// Which series the ARCH and volatility stages model.
enum class VolatilityTarget { funding, price };

struct PipelineConfig {
  std::uint64_t seed = 0;
  FillPolicy fill = FillPolicy::reject;

  double arch_level = 0.05;
  std::optional<std::size_t> arch_lags;  // empty: chosen by AIC up to arch_max_lag
  std::size_t arch_max_lag = 12;
  std::size_t arch_mean_ar_order = 0;

  double adf_level = 0.05;
  std::optional<std::size_t> adf_max_lag;  // empty: Schwert rule
  LagSelection adf_lag_selection = LagSelection::aic;

  double granger_level = 0.05;
  std::optional<std::size_t> granger_lags;  // empty: VAR AIC up to granger_max_lag
  std::size_t granger_max_lag = 12;

  VolatilityTarget volatility_target = VolatilityTarget::funding;
  std::vector<vol::Family> families{std::begin(vol::kAllFamilies), std::end(vol::kAllFamilies)};
  vol::EgarchForm egarch_form = vol::EgarchForm::nelson;
  int random_restarts = 1;
  std::size_t forecast_horizon = 30;
  std::size_t correlogram_lags = 36;

  StageToggles stages;
  std::string funding_label = "FundingRate";
  std::string price_label = "8 Hour price";

  bool operator==(const PipelineConfig&) const = default;
};

/// Reads `key = value` lines (`#` comments, optional `[section]` headers that
/// prefix keys with "section."). `level` sets every stage's level; the
/// per-stage keys override it. Unknown keys and bad values raise ParseError.
[[nodiscard]] PipelineConfig parse_config(std::istream& in, const std::string& source = "<config>");
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);

/// Every effective setting as key -> value text, in the same vocabulary that
/// parse_config accepts. Feeding it back through parse_config gives the same config.
[[nodiscard]] std::map<std::string, std::string> snapshot(const PipelineConfig& config);

}  // namespace perpstat
