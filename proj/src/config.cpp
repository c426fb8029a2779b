#include "perpstat/config.hpp"

#include "perpstat/error.hpp"

#include <boost/program_options.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace po = boost::program_options;

namespace perpstat {

namespace {

const char* const kKeys[] = {
    "seed",           "fill",
    "level",          "arch.level",
    "arch.lags",      "arch.max_lag",
    "arch.mean_ar_order",
    "adf.level",      "adf.max_lag",
    "adf.lag_selection",
    "granger.level",  "granger.lags",
    "granger.max_lag",
    "volatility.target",
    "volatility.families",
    "volatility.egarch_form",
    "volatility.random_restarts",
    "forecast.horizon",
    "diagnostics.max_lag",
    "stages.arch",    "stages.adf",
    "stages.granger", "stages.model_comparison",
    "stages.forecast",
    "stages.diagnostics",
    "labels.funding", "labels.price",
};

[[noreturn]] void bad_value(const std::string& source, const std::string& key, const std::string& value,
                            const char* expected) {
  throw Error(ErrorCode::ParseError, source + ": " + key + " = '" + value + "' (expected " + expected + ")");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Reader {
  const std::string& source;
  const po::variables_map& vm;

  const std::string* get(const char* key) const {
    auto it = vm.find(key);
    return it == vm.end() ? nullptr : &it->second.as<std::string>();
  }

  void size(const char* key, std::size_t& out, std::size_t minimum = 1) const {
    if (auto* v = get(key)) {
      if (!parse_number(*v, out) || out < minimum) bad_value(source, key, *v, "a positive integer");
    }
  }

  void lags(const char* key, std::optional<std::size_t>& out) const {
    if (auto* v = get(key)) {
      if (*v == "auto") {
        out.reset();
        return;
      }
      std::size_t n = 0;
      if (!parse_number(*v, n) || n == 0) bad_value(source, key, *v, "'auto' or a positive integer");
      out = n;
    }
  }

  void level(const char* key, double& out) const {
    if (auto* v = get(key)) {
      if (!parse_number(*v, out) || !(out > 0.0 && out < 1.0)) bad_value(source, key, *v, "a level in (0, 1)");
    }
  }

  void flag(const char* key, bool& out) const {
    if (auto* v = get(key)) {
      if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") {
        out = true;
      } else if (*v == "false" || *v == "no" || *v == "0" || *v == "off") {
        out = false;
      } else {
        bad_value(source, key, *v, "true or false");
      }
    }
  }

  void text(const char* key, std::string& out) const {
    if (auto* v = get(key)) out = *v;
  }
};

}  // namespace

PipelineConfig parse_config(std::istream& in, const std::string& source) {
  po::options_description options;
  for (const char* key : kKeys) options.add_options()(key, po::value<std::string>());
  po::variables_map vm;
  try {
    po::store(po::parse_config_file(in, options, false), vm);
  } catch (const po::error& e) {
    throw Error(ErrorCode::ParseError, source + ": " + e.what());
  }
  PipelineConfig c;
  const Reader r{source, vm};
  if (auto* v = r.get("seed")) {
    if (!parse_number(*v, c.seed)) bad_value(source, "seed", *v, "a non-negative integer");
  }
  if (auto* v = r.get("fill")) {
    if (*v == "reject") c.fill = FillPolicy::reject;
    else if (*v == "previous") c.fill = FillPolicy::previous;
    else bad_value(source, "fill", *v, "reject or previous");
  }

  double common = 0.05;
  r.level("level", common);
  c.arch_level = c.adf_level = c.granger_level = common;
  r.level("arch.level", c.arch_level);
  r.level("adf.level", c.adf_level);
  r.level("granger.level", c.granger_level);
  if (c.adf_level != 0.01 && c.adf_level != 0.05 && c.adf_level != 0.10) {
    bad_value(source, "adf.level", format_double(c.adf_level), "0.01, 0.05 or 0.1");
  }

  r.lags("arch.lags", c.arch_lags);
  r.size("arch.max_lag", c.arch_max_lag);
  r.size("arch.mean_ar_order", c.arch_mean_ar_order, 0);
  r.lags("adf.max_lag", c.adf_max_lag);
  if (auto* v = r.get("adf.lag_selection")) {
    if (*v == "aic") c.adf_lag_selection = LagSelection::aic;
    else if (*v == "fixed") c.adf_lag_selection = LagSelection::fixed;
    else bad_value(source, "adf.lag_selection", *v, "aic or fixed");
  }
  r.lags("granger.lags", c.granger_lags);
  r.size("granger.max_lag", c.granger_max_lag);

  if (auto* v = r.get("volatility.target")) {
    if (*v == "funding") c.volatility_target = VolatilityTarget::funding;
    else if (*v == "price") c.volatility_target = VolatilityTarget::price;
    else bad_value(source, "volatility.target", *v, "funding or price");
  }
  if (auto* v = r.get("volatility.families")) {
    c.families.clear();
    if (*v != "all") {
      std::stringstream list(*v);
      std::string item;
      while (std::getline(list, item, ',')) {
        const auto family = vol::parse_family(trim(item));
        if (!family) bad_value(source, "volatility.families", *v, "'all' or a comma list of family names");
        c.families.push_back(*family);
      }
    } else {
      c.families.assign(std::begin(vol::kAllFamilies), std::end(vol::kAllFamilies));
    }
    if (c.families.size() < 2) bad_value(source, "volatility.families", *v, "at least two families");
  }
  if (auto* v = r.get("volatility.egarch_form")) {
    if (*v == "nelson") c.egarch_form = vol::EgarchForm::nelson;
    else if (*v == "squared") c.egarch_form = vol::EgarchForm::squared;
    else bad_value(source, "volatility.egarch_form", *v, "nelson or squared");
  }
  if (auto* v = r.get("volatility.random_restarts")) {
    if (!parse_number(*v, c.random_restarts) || c.random_restarts < 0) {
      bad_value(source, "volatility.random_restarts", *v, "a non-negative integer");
    }
  }
  r.size("forecast.horizon", c.forecast_horizon);
  r.size("diagnostics.max_lag", c.correlogram_lags);

  r.flag("stages.arch", c.stages.arch);
  r.flag("stages.adf", c.stages.adf);
  r.flag("stages.granger", c.stages.granger);
  r.flag("stages.model_comparison", c.stages.model_comparison);
  r.flag("stages.forecast", c.stages.forecast);
  r.flag("stages.diagnostics", c.stages.diagnostics);
  r.text("labels.funding", c.funding_label);
  r.text("labels.price", c.price_label);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open config file");
  return parse_config(in, path.string());
}

std::map<std::string, std::string> snapshot(const PipelineConfig& c) {
  auto lags = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("auto"); };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string families;
  for (auto f : c.families) {
    if (!families.empty()) families += ",";
    families += vol::to_string(f);
  }
  return {
      {"seed", std::to_string(c.seed)},
      {"fill", c.fill == FillPolicy::previous ? "previous" : "reject"},
      {"arch.level", format_double(c.arch_level)},
      {"arch.lags", lags(c.arch_lags)},
      {"arch.max_lag", std::to_string(c.arch_max_lag)},
      {"arch.mean_ar_order", std::to_string(c.arch_mean_ar_order)},
      {"adf.level", format_double(c.adf_level)},
      {"adf.max_lag", lags(c.adf_max_lag)},
      {"adf.lag_selection", c.adf_lag_selection == LagSelection::aic ? "aic" : "fixed"},
      {"granger.level", format_double(c.granger_level)},
      {"granger.lags", lags(c.granger_lags)},
      {"granger.max_lag", std::to_string(c.granger_max_lag)},
      {"volatility.target", c.volatility_target == VolatilityTarget::funding ? "funding" : "price"},
      {"volatility.families", families},
      {"volatility.egarch_form", c.egarch_form == vol::EgarchForm::nelson ? "nelson" : "squared"},
      {"volatility.random_restarts", std::to_string(c.random_restarts)},
      {"forecast.horizon", std::to_string(c.forecast_horizon)},
      {"diagnostics.max_lag", std::to_string(c.correlogram_lags)},
      {"stages.arch", flag(c.stages.arch)},
      {"stages.adf", flag(c.stages.adf)},
      {"stages.granger", flag(c.stages.granger)},
      {"stages.model_comparison", flag(c.stages.model_comparison)},
      {"stages.forecast", flag(c.stages.forecast)},
      {"stages.diagnostics", flag(c.stages.diagnostics)},
      {"labels.funding", c.funding_label},
      {"labels.price", c.price_label},
  };
}

}  // namespace perpstat
