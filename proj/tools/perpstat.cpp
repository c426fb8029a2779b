// perpstat: command-line driver for the funding-rate econometrics pipeline.
//
// Exit codes: 0 success, 2 input errors (bad files, arguments, config), 3 stage
// or computation errors.

#include "perpstat/arch_test.hpp"
#include "perpstat/causality.hpp"
#include "perpstat/config.hpp"
#include "perpstat/csv.hpp"
#include "perpstat/error.hpp"
#include "perpstat/funding.hpp"
#include "perpstat/json_io.hpp"
#include "perpstat/pipeline.hpp"
#include "perpstat/stationarity.hpp"
#include "perpstat/volatility.hpp"

#include <CLI11.hpp>
#include <boost/program_options.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace perpstat;
using nlohmann::json;

namespace {

constexpr int kInputError = 2;
constexpr int kStageError = 3;

enum class Transform { none, difference, log_returns };

const std::map<std::string, Transform> kTransforms{
    {"none", Transform::none}, {"difference", Transform::difference}, {"log_returns", Transform::log_returns}};

const std::map<std::string, FillPolicy> kFills{{"reject", FillPolicy::reject}, {"previous", FillPolicy::previous}};

Series load(const std::string& path, Transform transform, FillPolicy fill) {
  Series s = read_series_csv(path, fill).series;
  switch (transform) {
    case Transform::none: return s;
    case Transform::difference: return first_difference(s);
    case Transform::log_returns: return log_returns(s);
  }
  return s;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
  out << text;
}

std::optional<std::size_t> parse_lags(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "lags must be 'auto' or a positive integer, got '" + text + "'");
}

std::vector<vol::Family> parse_families(const std::string& text) {
  if (text == "all") return {std::begin(vol::kAllFamilies), std::end(vol::kAllFamilies)};
  std::vector<vol::Family> out;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    const auto f = vol::parse_family(item);
    if (!f) throw Error(ErrorCode::InvalidArgument, "unknown family '" + item + "'");
    out.push_back(*f);
  }
  return out;
}

struct FundingSettings {
  funding::MarginConfig margin;
  TwapSchedule schedule;
  funding::DenominatorMode denominator = funding::DenominatorMode::literal;
};

funding::DenominatorMode parse_denominator(const std::string& v, const std::string& source) {
  if (v == "literal") return funding::DenominatorMode::literal;
  if (v == "exchange") return funding::DenominatorMode::exchange;
  throw Error(ErrorCode::ParseError, source + ": denominator must be literal or exchange");
}

// Plain `key = value` file: initial_margin, maintenance_margin, anchor_hours,
// partial, denominator.
FundingSettings load_funding_settings(const std::string& path) {
  namespace po = boost::program_options;
  po::options_description options;
  options.add_options()("initial_margin", po::value<double>())("maintenance_margin", po::value<double>())(
      "anchor_hours", po::value<int>())("partial", po::value<std::string>())("denominator",
                                                                          po::value<std::string>());
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open config file");
  po::variables_map vm;
  try {
    po::store(po::parse_config_file(in, options, false), vm);
  } catch (const po::error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  FundingSettings s;
  if (vm.count("initial_margin")) s.margin.initial_margin = vm["initial_margin"].as<double>();
  if (vm.count("maintenance_margin")) s.margin.maintenance_margin = vm["maintenance_margin"].as<double>();
  if (vm.count("anchor_hours")) s.schedule.anchor = Duration(3600 * vm["anchor_hours"].as<int>());
  if (vm.count("partial")) {
    const auto& v = vm["partial"].as<std::string>();
    if (v == "drop") s.schedule.partial = PartialWindows::drop;
    else if (v != "reject") throw Error(ErrorCode::ParseError, path + ": partial must be reject or drop");
  }
  if (vm.count("denominator")) s.denominator = parse_denominator(vm["denominator"].as<std::string>(), path);
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int report_error(const Error& e) {
  std::cerr << "perpstat: " << e.what() << '\n';
  return is_input_error(e.code()) ? kInputError : kStageError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Funding-rate econometrics: ARCH, ADF, Granger and GARCH-family analysis"};
  app.require_subcommand(1);
  std::string out_path;
  std::string fill_name = "reject";

  // run --------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run the full pipeline on a funding and a price CSV");
  std::string funding_path, price_path, config_path, format_name = "json";
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> run_fill;
  run->add_option("--funding", funding_path, "timestamp,value CSV of funding rates")->required()->check(CLI::ExistingFile);
  run->add_option("--price", price_path, "timestamp,value CSV of prices")->required()->check(CLI::ExistingFile);
  run->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "output file (default stdout)");
  run->add_option("--format", format_name, "json, text or plot")->check(CLI::IsMember({"json", "text", "plot"}));
  run->add_option("--seed", seed_override, "overrides the config seed");
  run->add_option("--fill", run_fill, "gap policy: reject or previous")->check(CLI::IsMember({"reject", "previous"}));
  run->callback([&] {
    PipelineConfig config = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (seed_override) config.seed = *seed_override;
    if (run_fill) config.fill = kFills.at(*run_fill);
    const auto report = run_pipeline(funding_path, price_path, config);
    const ReportFormat format = format_name == "json"   ? ReportFormat::json
                                : format_name == "text" ? ReportFormat::text_tables
                                                        : ReportFormat::plot_csv;
    write_output(emit_report(report, format), out_path);
  });

  // test arch|adf|granger ----------------------------------------------------
  auto* test = app.add_subcommand("test", "Run a single hypothesis test");
  test->require_subcommand(1);
  std::string input_path, lags_text = "auto";
  std::string arch_transform = "difference", adf_transform = "none", granger_transform = "difference",
              model_transform = "difference";
  std::size_t max_lag = 12;
  double level = 0.05;

  auto* arch = test->add_subcommand("arch", "Engle ARCH LM test");
  std::size_t ar_order = 0;
  arch->add_option("--input", input_path)->required()->check(CLI::ExistingFile);
  arch->add_option("--transform", arch_transform, "none, difference or log_returns")->check(CLI::IsMember({"none", "difference", "log_returns"}));
  arch->add_option("--lags", lags_text, "lag order or 'auto'");
  arch->add_option("--max-lag", max_lag, "upper bound for automatic lag choice");
  arch->add_option("--level", level);
  arch->add_option("--ar-order", ar_order, "AR order of the mean model (0 = sample mean)");
  arch->add_option("--fill", fill_name)->check(CLI::IsMember({"reject", "previous"}));
  arch->add_option("--out", out_path);
  arch->callback([&] {
    const Series residuals =
        mean_residuals(load(input_path, kTransforms.at(arch_transform), kFills.at(fill_name)), ar_order);
    const auto lags = parse_lags(lags_text);
    const auto report = arch_lm_test(residuals, lags ? *lags : select_arch_lag(residuals, max_lag), level);
    write_output(dump(json_io::arch_json(report)), out_path);
  });

  auto* adf = test->add_subcommand("adf", "Augmented Dickey-Fuller unit-root test");
  std::string spec_name = "all", adf_lag_text = "auto";
  bool fixed_lag = false;
  adf->add_option("--input", input_path)->required()->check(CLI::ExistingFile);
  adf->add_option("--transform", adf_transform)->check(
      CLI::IsMember({"none", "difference", "log_returns"}));
  adf->add_option("--spec", spec_name, "none, constant, constant_and_trend or all")
      ->check(CLI::IsMember({"none", "constant", "constant_and_trend", "all"}));
  adf->add_option("--max-lag", adf_lag_text, "largest augmentation lag or 'auto'");
  adf->add_flag("--fixed-lag", fixed_lag, "use max-lag as the lag instead of choosing by AIC");
  adf->add_option("--level", level, "0.01, 0.05 or 0.1");
  adf->add_option("--fill", fill_name)->check(CLI::IsMember({"reject", "previous"}));
  adf->add_option("--out", out_path);
  adf->callback([&] {
    const Series s = load(input_path, kTransforms.at(adf_transform), kFills.at(fill_name));
    json rows = json::array();
    for (AdfSpec spec : {AdfSpec::constant, AdfSpec::constant_and_trend, AdfSpec::none}) {
      if (spec_name != "all" && spec_name != to_string(spec)) continue;
      const auto lags = parse_lags(adf_lag_text);
      const std::size_t m = lags ? *lags : schwert_max_lag(s.size(), spec);
      rows.push_back(json_io::adf_json(
          adf_test(s, spec, m, level, fixed_lag ? LagSelection::fixed : LagSelection::aic)));
    }
    write_output(dump(rows), out_path);
  });

  auto* granger = test->add_subcommand("granger", "Granger non-causality F tests in both directions");
  std::string x_path, y_path;
  granger->add_option("--x", x_path, "first series CSV")->required()->check(CLI::ExistingFile);
  granger->add_option("--y", y_path, "second series CSV")->required()->check(CLI::ExistingFile);
  granger->add_option("--transform", granger_transform)->check(
      CLI::IsMember({"none", "difference", "log_returns"}));
  granger->add_option("--lags", lags_text, "lag order or 'auto'");
  granger->add_option("--max-lag", max_lag);
  granger->add_option("--level", level);
  granger->add_option("--fill", fill_name)->check(CLI::IsMember({"reject", "previous"}));
  granger->add_option("--out", out_path);
  granger->callback([&] {
    const auto fill = kFills.at(fill_name);
    auto aligned = align(read_series_csv(x_path, fill).series, read_series_csv(y_path, fill).series);
    const auto t = kTransforms.at(granger_transform);
    auto apply = [t](const Series& s) {
      return t == Transform::none ? s : t == Transform::difference ? first_difference(s) : log_returns(s);
    };
    const Series x = apply(aligned.funding), y = apply(aligned.price);
    const auto lags = parse_lags(lags_text);
    const std::size_t p = lags ? *lags : select_var_lag(x, y, max_lag);
    const auto [xy, yx] = granger_test(x, y, p, level);
    write_output(dump({{"lag_order", p}, {"x_to_y", json_io::granger_json(xy)}, {"y_to_x", json_io::granger_json(yx)}}),
                 out_path);
  });

  // fit / compare / forecast ------------------------------------------------
  vol::FitOptions fit_options;
  std::string family_name = "garch", families_text = "all", egarch_form = "nelson";
  bool no_demean = false;
  auto add_model_options = [&](CLI::App* cmd) {
    cmd->add_option("--input", input_path)->required()->check(CLI::ExistingFile);
    cmd->add_option("--transform", model_transform)->check(
        CLI::IsMember({"none", "difference", "log_returns"}));
    cmd->add_option("--seed", fit_options.seed);
    cmd->add_option("--restarts", fit_options.random_restarts, "seeded random restarts");
    cmd->add_option("--egarch-form", egarch_form)->check(CLI::IsMember({"nelson", "squared"}));
    cmd->add_flag("--no-demean", no_demean, "fit the raw series without estimating a mean");
    cmd->add_option("--fill", fill_name)->check(CLI::IsMember({"reject", "previous"}));
    cmd->add_option("--out", out_path);
  };
  auto prepare = [&] {
    fit_options.demean = !no_demean;
    fit_options.egarch_form = egarch_form == "nelson" ? vol::EgarchForm::nelson : vol::EgarchForm::squared;
    return load(input_path, kTransforms.at(model_transform), kFills.at(fill_name));
  };
  auto family_of = [](const std::string& name) {
    const auto f = vol::parse_family(name);
    if (!f) throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
    return *f;
  };

  auto* fit = app.add_subcommand("fit", "Fit one GARCH-family model by maximum likelihood");
  add_model_options(fit);
  std::string variance_csv;
  fit->add_option("--family", family_name, "garch, tarch, egarch, parch or igarch");
  fit->add_option("--variance-csv", variance_csv, "also write the conditional-variance path as CSV");
  fit->callback([&] {
    const Series s = prepare();
    const auto result = vol::fit(s, family_of(family_name), fit_options);
    if (!variance_csv.empty()) {
      std::ofstream out(variance_csv);
      if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + variance_csv + "'");
      write_series_csv(out, result.conditional_variance, "conditional_variance");
    }
    write_output(dump(json_io::fit_json(result)), out_path);
  });

  auto* compare = app.add_subcommand("compare", "Fit several families and rank them by AIC");
  add_model_options(compare);
  compare->add_option("--families", families_text, "'all' or a comma list");
  compare->callback([&] {
    const Series s = prepare();
    const auto families = parse_families(families_text);
    ModelComparisonSection section{vol::compare(s, families, fit_options), std::nullopt};
    write_output(dump(json_io::comparison_json(section)), out_path);
  });

  auto* forecast = app.add_subcommand("forecast", "Forecast conditional variance from a fitted model");
  add_model_options(forecast);
  std::size_t horizon = 30;
  std::string forecast_family = "best";
  forecast->add_option("--family", forecast_family, "family to fit, or 'best' to pick by AIC");
  forecast->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
  forecast->callback([&] {
    const Series s = prepare();
    vol::VolatilityFit chosen = [&] {
      if (forecast_family != "best") return vol::fit(s, family_of(forecast_family), fit_options);
      auto ranked = vol::compare(s, vol::kAllFamilies, fit_options).ranked;
      if (ranked.empty()) throw Error(ErrorCode::NotConverged, "no family converged");
      return std::move(ranked.front());
    }();
    write_output(dump({{"family", std::string(vol::to_string(chosen.family))},
                       {"forecast", json_io::forecast_json(vol::forecast(chosen, horizon))}}),
                 out_path);
  });

  // funding compute -----------------------------------------------------------
  auto* funding_cmd = app.add_subcommand("funding", "Perpetual-swap funding engine");
  funding_cmd->require_subcommand(1);
  auto* compute = funding_cmd->add_subcommand("compute", "Funding rate per period from minute samples");
  std::string margin_config;
  compute->add_option("--input", input_path, "timestamp,interest,premium CSV at one-minute cadence")
      ->required()->check(CLI::ExistingFile);
  compute->add_option("--config", margin_config, "initial_margin, maintenance_margin, anchor_hours, partial")
      ->check(CLI::ExistingFile);
  compute->add_option("--out", out_path);
  compute->callback([&] {
    const FundingSettings settings = margin_config.empty() ? FundingSettings{} : load_funding_settings(margin_config);
    std::ifstream in(input_path);
    if (!in) throw Error(ErrorCode::ParseError, input_path + ": cannot open file");
    const auto table = parse_table_csv(in, input_path, 2);
    if (table.timestamps.empty()) throw Error(ErrorCode::ParseError, input_path + ": no data rows");
    const Series interest(table.timestamps, table.columns[0], kOneMinute);
    const Series premium(table.timestamps, table.columns[1], kOneMinute);
    std::string lines;
    for (const auto& period : funding::compute_periods(interest, premium, settings.margin, settings.schedule)) {
      const auto& b = period.breakdown;
      lines += json{{"funding_time", format_timestamp(period.funding_time)},
                    {"interest_component", b.interest_component},
                    {"premium_index", b.premium_index},
                    {"clamp_value", b.clamp_value},
                    {"funding_rate", b.funding_rate},
                    {"capped", b.capped},
                    {"cap_bound", b.cap_bound}}
                   .dump() +
               "\n";
    }
    write_output(lines, out_path);
  });

  auto* premium_cmd = funding_cmd->add_subcommand("premium", "Premium index per sample from impact and index prices");
  std::optional<std::string> denominator_flag;
  premium_cmd
      ->add_option("--input", input_path,
                   "timestamp,impact_bid,impact_ask,mark,spot,current_funding_rate CSV")
      ->required()->check(CLI::ExistingFile);
  premium_cmd->add_option("--config", margin_config, "anchor_hours, denominator")->check(CLI::ExistingFile);
  premium_cmd->add_option("--denominator", denominator_flag, "literal or exchange (overrides the config)")
      ->check(CLI::IsMember({"literal", "exchange"}));
  premium_cmd->add_option("--out", out_path);
  premium_cmd->callback([&] {
    FundingSettings settings = margin_config.empty() ? FundingSettings{} : load_funding_settings(margin_config);
    if (denominator_flag) settings.denominator = parse_denominator(*denominator_flag, "--denominator");
    std::ifstream in(input_path);
    if (!in) throw Error(ErrorCode::ParseError, input_path + ": cannot open file");
    const auto table = parse_table_csv(in, input_path, 5);
    const long window = kEightHours.count();
    std::string lines;
    for (std::size_t i = 0; i < table.timestamps.size(); ++i) {
      // Time left until the next funding boundary (a sample on the boundary has zero left).
      const long offset = (table.timestamps[i].time_since_epoch() - settings.schedule.anchor).count();
      const long rem = ((offset % window) + window) % window;
      funding::PremiumInputs p;
      p.impact_bid_price = table.columns[0][i];
      p.impact_ask_price = table.columns[1][i];
      p.mark_price = table.columns[2][i];
      p.spot_price = table.columns[3][i];
      p.current_funding_rate = table.columns[4][i];
      p.time_until_funding = Duration(rem == 0 ? 0 : window - rem);
      lines += json{{"timestamp", format_timestamp(table.timestamps[i])},
                    {"funding_basis", funding::funding_basis(p)},
                    {"premium_index", funding::premium_index(p, settings.denominator)}}
                   .dump() +
               "\n";
    }
    write_output(lines, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "perpstat: " << e.what() << '\n';
    return kStageError;
  }
  return 0;
}
