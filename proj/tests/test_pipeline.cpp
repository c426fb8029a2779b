#include "catch_amalgamated.hpp"

#include "data.hpp"
#include "perpstat/error.hpp"
#include "perpstat/pipeline.hpp"
#include "synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace perpstat;
using perpstat::testing::synthetic_market;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("perpstat_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

PipelineConfig quick_config() {
  PipelineConfig c;
  c.seed = 7;
  c.adf_max_lag = 6;
  c.correlogram_lags = 12;
  return c;
}

const PipelineReport& reference_report() {
  static const PipelineReport report = [] {
    auto m = synthetic_market(3, 1500);
    return run_pipeline(m.funding, m.price, quick_config());
  }();
  return report;
}

}  // namespace

TEST_CASE("config parsing", "[config]") {
  std::istringstream in(R"(# comment
seed = 42
level = 0.10
granger.lags = 3
[volatility]
families = garch, egarch
egarch_form = squared
[stages]
forecast = false
[labels]
price = BTCUSD
)");
  auto c = parse_config(in);
  CHECK(c.seed == 42);
  CHECK(c.arch_level == 0.10);
  CHECK(c.adf_level == 0.10);
  CHECK(c.granger_lags == 3u);
  CHECK(c.families == std::vector<vol::Family>{vol::Family::garch, vol::Family::egarch});
  CHECK(c.egarch_form == vol::EgarchForm::squared);
  CHECK_FALSE(c.stages.forecast);
  CHECK(c.stages.arch);
  CHECK(c.price_label == "BTCUSD");
  CHECK(c.funding_label == "FundingRate");
}

TEST_CASE("config snapshot round trip", "[config][property]") {
  PipelineConfig c = quick_config();
  c.arch_lags = 2;
  c.fill = FillPolicy::previous;
  c.granger_level = 0.025;
  c.stages.diagnostics = false;
  c.volatility_target = VolatilityTarget::price;
  c.families = {vol::Family::tarch, vol::Family::parch};
  for (const auto& config : {PipelineConfig{}, c}) {
    std::ostringstream text;
    for (const auto& [k, v] : snapshot(config)) text << k << " = " << v << '\n';
    std::istringstream in(text.str());
    CHECK(parse_config(in) == config);
  }
}

TEST_CASE("config rejects unknown keys and bad values", "[config]") {
  for (const char* text : {"colour = blue\n", "seed = -3\n", "adf.level = 0.07\n", "arch.lags = 0\n",
                           "stages.arch = maybe\n", "volatility.families = garch\n", "fill = zero\n"}) {
    std::istringstream in(text);
    try {
      (void)parse_config(in, "cfg.txt");
      FAIL("expected ParseError for " << text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK_THAT(std::string(e.what()), ContainsSubstring("cfg.txt"));
    }
  }
}

TEST_CASE("alignment intersects timestamps", "[pipeline]") {
  auto a = Series::regular(Timestamp{}, kEightHours, {1, 2, 3, 4, 5});
  auto b = Series::regular(Timestamp{} + 2 * kEightHours, kEightHours, {10, 20, 30, 40, 50, 60});
  auto aligned = align(a, b);
  CHECK(aligned.summary.common_rows == 3);
  CHECK(aligned.summary.dropped_funding == 2);
  CHECK(aligned.summary.dropped_price == 3);
  CHECK(aligned.funding.values()[0] == 3);
  CHECK(aligned.price.values()[0] == 10);

  auto far = Series::regular(Timestamp{} + 100 * kEightHours, kEightHours, {1, 2});
  try {
    (void)align(a, far);
    FAIL("expected AlignmentError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlignmentError);
  }
}

TEST_CASE("synthetic market yields the constructed outcomes", "[pipeline]") {
  const auto& r = reference_report();
  REQUIRE(r.arch);
  REQUIRE(r.adf);
  REQUIRE(r.granger);
  REQUIRE(r.model_comparison);
  REQUIRE(r.diagnostics);
  CHECK(r.arch->reject_null);
  CHECK(r.adf->price_integration_order == 1);
  CHECK(r.adf->funding_integration_order == 0);
  CHECK(r.granger->price_to_funding.reject_noncausality);
  CHECK(r.adf->funding.size() == 6);
  CHECK(r.adf->price[3].differencing_level == 1);
  CHECK(r.adf->price[1].spec == AdfSpec::constant_and_trend);
  CHECK_FALSE(r.partial);
  CHECK(r.skipped_stages.empty());
  CHECK(r.provenance.seed == 7);
  CHECK(r.provenance.config.at("adf.max_lag") == "6");
  REQUIRE(r.model_comparison->forecast);
  CHECK(r.model_comparison->forecast->variances.size() == 30);
}

TEST_CASE("Granger stage sees plain first differences", "[pipeline]") {
  const auto& r = reference_report();
  auto m = synthetic_market(3, 1500);
  auto [forward, backward] =
      granger_test(first_difference(m.price), first_difference(m.funding), r.granger->lag_order);
  CHECK(forward == r.granger->price_to_funding);
  CHECK(backward == r.granger->funding_to_price);
}

TEST_CASE("json round trip and determinism", "[pipeline][report]") {
  const auto& r = reference_report();
  const auto json = emit_report(r, ReportFormat::json);
  CHECK(report_from_json(json) == r);
  CHECK(emit_report(report_from_json(json), ReportFormat::json) == json);

  auto m = synthetic_market(3, 1500);
  CHECK(emit_report(run_pipeline(m.funding, m.price, quick_config()), ReportFormat::json) == json);
}

TEST_CASE("text tables mirror the published layouts", "[pipeline][report]") {
  const auto text = emit_report(reference_report(), ReportFormat::text_tables);
  CHECK_THAT(text, ContainsSubstring("ARCH Test results"));
  CHECK_THAT(text, ContainsSubstring("Probability of LM Statistic (Chi-Square("));
  CHECK_THAT(text, ContainsSubstring("value of alpha1(squared residuals)"));
  CHECK_THAT(text, ContainsSubstring("Stationarity in FundingRate"));
  CHECK_THAT(text, ContainsSubstring("Stationarity in 8 Hour price"));
  std::istringstream lines(text);
  std::string line;
  int adf_headers = 0;
  bool forward = false, backward = false;
  while (std::getline(lines, line)) {
    if (line.rfind("Test for Unit root in", 0) == 0) {
      ++adf_headers;
      std::istringstream cols(line);
      std::string rest((std::istreambuf_iterator<char>(cols)), {});
      for (const char* h : {"Exogenous", "t-Statistic", "Probability", "1% level", "5% level", "10% level"}) {
        CHECK_THAT(rest, ContainsSubstring(h));
      }
      CHECK(rest.find("Exogenous") < rest.find("t-Statistic"));
      CHECK(rest.find("5% level") < rest.find("10% level"));
    }
    forward |= line.rfind("8 Hour price does not Granger Cause FundingRate", 0) == 0;
    backward |= line.rfind("FundingRate does not Granger Cause 8 Hour price", 0) == 0;
  }
  CHECK(adf_headers == 2);
  CHECK(forward);
  CHECK(backward);
  CHECK_THAT(text, ContainsSubstring("Information Criterion for various models"));
  CHECK_THAT(text, ContainsSubstring("Selected by AIC: "));
}

TEST_CASE("plot output carries both correlograms", "[pipeline][report]") {
  const auto csv = emit_report(reference_report(), ReportFormat::plot_csv);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "series,lag,acf,pacf,q_stat,q_pvalue");
  int series = 0, squared = 0;
  while (std::getline(lines, line)) {
    series += line.rfind("series,", 0) == 0;
    squared += line.rfind("squared,", 0) == 0;
  }
  CHECK(series == 12);
  CHECK(squared == 12);
}

TEST_CASE("stage isolation", "[pipeline][property]") {
  const auto& full = reference_report();
  auto m = synthetic_market(3, 1500);
  bool StageToggles::*toggles[] = {&StageToggles::arch, &StageToggles::adf, &StageToggles::granger,
                                   &StageToggles::model_comparison, &StageToggles::forecast,
                                   &StageToggles::diagnostics};
  for (auto toggle : toggles) {
    auto config = quick_config();
    config.stages.*toggle = false;
    auto r = run_pipeline(m.funding, m.price, config);
    CHECK(r.partial);
    // The forecast is nested in the comparison, so dropping the comparison skips both.
    CHECK(r.skipped_stages.size() == (toggle == &StageToggles::model_comparison ? 2u : 1u));
    CHECK((toggle == &StageToggles::arch ? !r.arch : r.arch == full.arch));
    CHECK((toggle == &StageToggles::adf ? !r.adf : r.adf == full.adf));
    CHECK((toggle == &StageToggles::granger ? !r.granger : r.granger == full.granger));
    CHECK((toggle == &StageToggles::diagnostics ? !r.diagnostics : r.diagnostics == full.diagnostics));
    if (toggle == &StageToggles::model_comparison) {
      CHECK_FALSE(r.model_comparison);
    } else if (toggle == &StageToggles::forecast) {
      REQUIRE(r.model_comparison);
      CHECK_FALSE(r.model_comparison->forecast);
      CHECK(r.model_comparison->comparison == full.model_comparison->comparison);
    } else {
      CHECK(r.model_comparison == full.model_comparison);
    }
  }
}

TEST_CASE("missing sections are reported", "[pipeline][report]") {
  auto config = quick_config();
  config.stages.diagnostics = false;
  config.stages.model_comparison = false;
  auto m = synthetic_market(3, 1500);
  auto r = run_pipeline(m.funding, m.price, config);
  const ReportSection need[] = {ReportSection::adf, ReportSection::model_comparison};
  try {
    (void)emit_report(r, ReportFormat::json, need);
    FAIL("expected IncompleteReport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteReport);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("model_comparison"));
  }
  CHECK_THROWS_AS(emit_report(r, ReportFormat::plot_csv), Error);
  CHECK_NOTHROW(emit_report(r, ReportFormat::text_tables));
}

TEST_CASE("degenerate input fails inside the ARCH stage", "[pipeline]") {
  auto flat = Series::regular(Timestamp{}, kEightHours, std::vector<double>(400, 0.0001));
  try {
    (void)run_pipeline(flat, flat, quick_config());
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "arch");
    CHECK(e.code() == ErrorCode::DegenerateSeries);
  }
}

TEST_CASE("file inputs and provenance", "[pipeline]") {
  const auto dir = scratch_dir("provenance");
  auto [funding, price] = perpstat::testing::write_market(synthetic_market(5, 1500), dir);
  auto config = quick_config();
  config.stages.model_comparison = false;
  auto r = run_pipeline(funding, price, config);
  CHECK(r.provenance.funding_sha256.size() == 64);
  CHECK(r.provenance.funding_path == funding.string());
  CHECK(verify_provenance(r));
  std::ofstream(price, std::ios::app) << "\n";
  CHECK_FALSE(verify_provenance(r));

  const auto empty = dir / "empty.csv";
  std::ofstream(empty).close();
  try {
    (void)run_pipeline(empty, price, config);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("empty.csv"));
  }
  fs::remove_all(dir);
}

TEST_CASE("known digest", "[pipeline]") {
  const auto dir = scratch_dir("digest");
  std::ofstream(dir / "abc.txt") << "abc";
  CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove_all(dir);
}
