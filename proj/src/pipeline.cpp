#include "perpstat/pipeline.hpp"

#include "perpstat/csv.hpp"
#include "perpstat/error.hpp"

#include <algorithm>
#include <array>
#include <future>

namespace perpstat {

namespace {

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

constexpr std::array<AdfSpec, 3> kAdfOrder{AdfSpec::constant, AdfSpec::constant_and_trend, AdfSpec::none};

std::vector<AdfReport> adf_rows(const Series& level, const Series& diff, std::size_t max_lag,
                                const PipelineConfig& config) {
  std::vector<std::future<AdfReport>> jobs;
  for (const Series* s : {&level, &diff}) {
    for (AdfSpec spec : kAdfOrder) {
      jobs.push_back(std::async(std::launch::async, [s, spec, max_lag, &config] {
        return adf_test(*s, spec, max_lag, config.adf_level, config.adf_lag_selection);
      }));
    }
  }
  std::vector<AdfReport> rows;
  for (auto& job : jobs) rows.push_back(job.get());
  for (std::size_t i = 3; i < rows.size(); ++i) rows[i].differencing_level = 1;
  return rows;
}

}  // namespace

AlignedInputs align(const Series& funding, const Series& price) {
  std::vector<Timestamp> common;
  std::set_intersection(funding.timestamps().begin(), funding.timestamps().end(), price.timestamps().begin(),
                        price.timestamps().end(), std::back_inserter(common));
  if (common.empty()) throw Error(ErrorCode::AlignmentError, "funding and price files share no timestamps");

  auto restrict = [&](const Series& s) {
    std::vector<double> values;
    values.reserve(common.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.size() && j < common.size(); ++i) {
      if (s.timestamps()[i] == common[j]) {
        values.push_back(s[i]);
        ++j;
      }
    }
    return values;
  };
  if (common.size() > 1 && funding.cadence() != price.cadence()) {
    throw Error(ErrorCode::AlignmentError, "funding and price files have different cadences");
  }
  // A gap inside the overlap leaves uneven spacing, which the Series constructor rejects.
  Series f(common, restrict(funding), funding.cadence());
  Series p(common, restrict(price), funding.cadence());

  AlignmentSummary summary;
  summary.funding_rows = funding.size();
  summary.price_rows = price.size();
  summary.common_rows = common.size();
  summary.dropped_funding = funding.size() - common.size();
  summary.dropped_price = price.size() - common.size();
  summary.first = common.front();
  summary.last = common.back();
  return {std::move(f), std::move(p), summary};
}

PipelineReport run_pipeline(const Series& funding_in, const Series& price_in, const PipelineConfig& config) {
  PipelineReport report;
  report.provenance.config = snapshot(config);
  report.provenance.seed = config.seed;
  report.funding_label = config.funding_label;
  report.price_label = config.price_label;

  auto aligned = align(funding_in, price_in);
  report.alignment = aligned.summary;

  const Series funding_diff = stage("difference", [&] { return first_difference(aligned.funding); });
  const Series price_diff = stage("difference", [&] { return first_difference(aligned.price); });
  const Series modeled = stage("difference", [&] {
    return config.volatility_target == VolatilityTarget::funding ? funding_diff : log_returns(aligned.price);
  });

  const auto& st = config.stages;
  if (st.arch) {
    report.arch = stage("arch", [&] {
      const Series residuals = mean_residuals(modeled, config.arch_mean_ar_order);
      const std::size_t lags = config.arch_lags ? *config.arch_lags : select_arch_lag(residuals, config.arch_max_lag);
      return arch_lm_test(residuals, lags, config.arch_level);
    });
  }
  if (st.diagnostics) {
    report.diagnostics = stage("diagnostics", [&] {
      return DiagnosticsSection{correlogram(modeled, config.correlogram_lags),
                                correlogram(square(demean(modeled)), config.correlogram_lags)};
    });
  }
  if (st.adf) {
    report.adf = stage("adf", [&] {
      AdfSection section;
      const std::size_t f_lag =
          config.adf_max_lag ? *config.adf_max_lag : schwert_max_lag(aligned.funding.size(), AdfSpec::constant_and_trend);
      const std::size_t p_lag =
          config.adf_max_lag ? *config.adf_max_lag : schwert_max_lag(aligned.price.size(), AdfSpec::constant_and_trend);
      section.funding = adf_rows(aligned.funding, funding_diff, f_lag, config);
      section.price = adf_rows(aligned.price, price_diff, p_lag, config);
      section.funding_integration_order = integration_order(aligned.funding, AdfSpec::constant, f_lag, config.adf_level);
      section.price_integration_order = integration_order(aligned.price, AdfSpec::constant, p_lag, config.adf_level);
      return section;
    });
  }
  if (st.granger) {
    report.granger = stage("granger", [&] {
      GrangerSection section;
      section.lag_selected = !config.granger_lags.has_value();
      section.lag_order = config.granger_lags ? *config.granger_lags
                                              : select_var_lag(price_diff, funding_diff, config.granger_max_lag);
      auto [forward, backward] = granger_test(price_diff, funding_diff, section.lag_order, config.granger_level);
      section.price_to_funding = forward;
      section.funding_to_price = backward;
      return section;
    });
  }
  if (st.model_comparison) {
    ModelComparisonSection section = stage("model_comparison", [&] {
      vol::FitOptions options;
      options.egarch_form = config.egarch_form;
      options.seed = config.seed;
      options.random_restarts = config.random_restarts;
      return ModelComparisonSection{vol::compare(modeled, config.families, options), std::nullopt};
    });
    if (st.forecast) {
      section.forecast = stage("forecast", [&] {
        if (section.comparison.ranked.empty()) {
          throw Error(ErrorCode::NotConverged, "no family converged, nothing to forecast");
        }
        return vol::forecast(section.comparison.ranked.front(), config.forecast_horizon);
      });
    }
    report.model_comparison = std::move(section);
  }

  const std::pair<bool, const char*> toggles[] = {
      {st.arch, "arch"},
      {st.diagnostics, "diagnostics"},
      {st.adf, "adf"},
      {st.granger, "granger"},
      {st.model_comparison, "model_comparison"},
      {st.model_comparison && st.forecast, "forecast"},
  };
  for (auto [enabled, name] : toggles) {
    if (!enabled) report.skipped_stages.emplace_back(name);
  }
  report.partial = !report.skipped_stages.empty();
  return report;
}

PipelineReport run_pipeline(const std::filesystem::path& funding_csv, const std::filesystem::path& price_csv,
                            const PipelineConfig& config) {
  const auto funding = read_series_csv(funding_csv, config.fill);
  const auto price = read_series_csv(price_csv, config.fill);
  PipelineReport report = run_pipeline(funding.series, price.series, config);
  report.alignment.funding_filled = funding.filled;
  report.alignment.price_filled = price.filled;
  report.provenance.funding_path = funding_csv.string();
  report.provenance.price_path = price_csv.string();
  report.provenance.funding_sha256 = sha256_file(funding_csv);
  report.provenance.price_sha256 = sha256_file(price_csv);
  return report;
}

}  // namespace perpstat
