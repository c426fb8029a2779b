#pragma once

#include "perpstat/arch_test.hpp"
#include "perpstat/causality.hpp"
#include "perpstat/pipeline.hpp"
#include "perpstat/stationarity.hpp"
#include "perpstat/volatility.hpp"

#include <json.hpp>

// JSON views of the individual results, shared by the report writer and the CLI.
// Non-finite numbers are encoded as "inf", "-inf" or "nan".
namespace perpstat::json_io {

[[nodiscard]] nlohmann::json arch_json(const ArchTestReport& r);
[[nodiscard]] nlohmann::json adf_json(const AdfReport& r);
[[nodiscard]] nlohmann::json granger_json(const GrangerReport& r);
[[nodiscard]] nlohmann::json fit_json(const vol::VolatilityFit& f);
[[nodiscard]] nlohmann::json forecast_json(const vol::VarianceForecast& f);
[[nodiscard]] nlohmann::json comparison_json(const ModelComparisonSection& s);
[[nodiscard]] nlohmann::json correlogram_json(const std::vector<CorrelogramRow>& rows);

}  // namespace perpstat::json_io
