#pragma once

#include "perpstat/arch_test.hpp"
#include "perpstat/causality.hpp"
#include "perpstat/config.hpp"
#include "perpstat/series.hpp"
#include "perpstat/stationarity.hpp"
#include "perpstat/volatility.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace perpstat {

struct Provenance {
  std::string funding_path;
  std::string funding_sha256;
  std::string price_path;
  std::string price_sha256;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;

  bool operator==(const Provenance&) const = default;
};

struct AlignmentSummary {
  std::size_t funding_rows = 0;  // after ingestion (including filled rows)
  std::size_t price_rows = 0;
  std::size_t funding_filled = 0;
  std::size_t price_filled = 0;
  std::size_t common_rows = 0;
  std::size_t dropped_funding = 0;
  std::size_t dropped_price = 0;
  Timestamp first;
  Timestamp last;

  bool operator==(const AlignmentSummary&) const = default;
};

struct AdfSection {
  // Six rows each, level then first difference, in the order constant,
  // constant_and_trend, none.
  std::vector<AdfReport> funding;
  std::vector<AdfReport> price;
  std::size_t funding_integration_order = 0;  // from the constant specification
  std::size_t price_integration_order = 0;

  bool operator==(const AdfSection&) const = default;
};

struct GrangerSection {
  std::size_t lag_order = 1;
  bool lag_selected = true;  // false when fixed in the config
  GrangerReport price_to_funding;
  GrangerReport funding_to_price;

  bool operator==(const GrangerSection&) const = default;
};

struct ModelComparisonSection {
  vol::ModelComparison comparison;
  std::optional<vol::VarianceForecast> forecast;  // of comparison.ranked.front()

  bool operator==(const ModelComparisonSection&) const = default;
};

struct DiagnosticsSection {
  std::vector<CorrelogramRow> series;   // of the modeled (differenced) series
  std::vector<CorrelogramRow> squared;  // of its squared demeaned values

  bool operator==(const DiagnosticsSection&) const = default;
};

/// Sections are present exactly when their stage ran.
struct PipelineReport {
  Provenance provenance;
  AlignmentSummary alignment;
  std::string funding_label;
  std::string price_label;
  std::optional<ArchTestReport> arch;
  std::optional<AdfSection> adf;
  std::optional<GrangerSection> granger;
  std::optional<ModelComparisonSection> model_comparison;
  std::optional<DiagnosticsSection> diagnostics;
  std::vector<std::string> skipped_stages;
  bool partial = false;

  bool operator==(const PipelineReport&) const = default;
};

/// The two ingested series restricted to their common timestamps.
struct AlignedInputs {
  Series funding;
  Series price;
  AlignmentSummary summary;
};

/// Intersects timestamps; throws AlignmentError when nothing overlaps.
[[nodiscard]] AlignedInputs align(const Series& funding, const Series& price);

/// Runs the stages in order: differencing, ARCH LM, ADF (both series, level and
/// first difference, three specifications), Granger on the differenced pair,
/// volatility model comparison, then the best fit's forecast. Errors raised
/// inside a stage are rethrown as StageError tagged with the stage name.
[[nodiscard]] PipelineReport run_pipeline(const std::filesystem::path& funding_csv,
                                          const std::filesystem::path& price_csv, const PipelineConfig& config);

/// Same as above on already-ingested series; provenance digests are left empty.
[[nodiscard]] PipelineReport run_pipeline(const Series& funding, const Series& price, const PipelineConfig& config);

enum class ReportFormat { json, text_tables, plot_csv };

enum class ReportSection { arch, adf, granger, model_comparison, forecast, diagnostics };

/// Serializes deterministically. Throws IncompleteReport when a section listed
/// in `required` is missing, and for plot_csv when diagnostics are absent.
[[nodiscard]] std::string emit_report(const PipelineReport& report, ReportFormat format,
                                      std::span<const ReportSection> required = {});

/// Inverse of emit_report(..., ReportFormat::json).
[[nodiscard]] PipelineReport report_from_json(const std::string& text);

/// Lower-case hex SHA-256 of a file's bytes.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

/// True when both input files still hash to the digests in the report.
[[nodiscard]] bool verify_provenance(const PipelineReport& report);

}  // namespace perpstat
