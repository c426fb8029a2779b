#include "perpstat/csv.hpp"
#include "perpstat/error.hpp"
#include "perpstat/json_io.hpp"
#include "perpstat/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace perpstat {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// JSON encoding. Non-finite numbers are written as the strings "inf", "-inf"
// and "nan" so that every report survives a round trip.

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw Error(ErrorCode::ParseError, "expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

json nums(std::span<const double> values) {
  json out = json::array();
  for (double v : values) out.push_back(num(v));
  return out;
}

std::vector<double> get_nums(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(get_num(v));
  return out;
}

json time_json(Timestamp t) { return format_timestamp(t); }
Timestamp get_time(const json& j) { return parse_timestamp(j.get<std::string>()); }

json series_json(const Series& s) {
  return {{"start", time_json(s.front_time())}, {"cadence_seconds", s.cadence().count()}, {"values", nums(s.values())}};
}

Series get_series(const json& j) {
  return Series::regular(get_time(j.at("start")), Duration(j.at("cadence_seconds").get<std::int64_t>()),
                         get_nums(j.at("values")));
}

AdfSpec parse_adf_spec(const std::string& s) {
  for (AdfSpec spec : {AdfSpec::none, AdfSpec::constant, AdfSpec::constant_and_trend}) {
    if (to_string(spec) == s) return spec;
  }
  throw Error(ErrorCode::ParseError, "unknown ADF specification '" + s + "'");
}

vol::Family get_family(const json& j) {
  const auto family = vol::parse_family(j.get<std::string>());
  if (!family) throw Error(ErrorCode::ParseError, "unknown model family '" + j.get<std::string>() + "'");
  return *family;
}

}  // namespace

namespace json_io {

json arch_json(const ArchTestReport& r) {
  return {{"lag_order", r.lag_order},
          {"n_effective", r.n_effective},
          {"lm_statistic", num(r.lm_statistic)},
          {"lm_pvalue", num(r.lm_pvalue)},
          {"f_statistic", num(r.f_statistic)},
          {"f_pvalue", num(r.f_pvalue)},
          {"r_squared", num(r.r_squared)},
          {"constant", num(r.constant)},
          {"constant_pvalue", num(r.constant_pvalue)},
          {"alpha_estimates", nums(r.alpha_estimates)},
          {"level", num(r.level)},
          {"reject_null", r.reject_null}};
}

ArchTestReport get_arch(const json& j) {
  ArchTestReport r;
  r.lag_order = j.at("lag_order");
  r.n_effective = j.at("n_effective");
  r.lm_statistic = get_num(j.at("lm_statistic"));
  r.lm_pvalue = get_num(j.at("lm_pvalue"));
  r.f_statistic = get_num(j.at("f_statistic"));
  r.f_pvalue = get_num(j.at("f_pvalue"));
  r.r_squared = get_num(j.at("r_squared"));
  r.constant = get_num(j.at("constant"));
  r.constant_pvalue = get_num(j.at("constant_pvalue"));
  r.alpha_estimates = get_nums(j.at("alpha_estimates"));
  r.level = get_num(j.at("level"));
  r.reject_null = j.at("reject_null");
  return r;
}

json adf_json(const AdfReport& r) {
  return {{"spec", std::string(to_string(r.spec))},
          {"lag_order", r.lag_order},
          {"n_obs", r.n_obs},
          {"n_params", r.n_params},
          {"t_statistic", num(r.t_statistic)},
          {"critical_values", {{"1%", num(r.critical_values.one)},
                               {"5%", num(r.critical_values.five)},
                               {"10%", num(r.critical_values.ten)}}},
          {"p_value", num(r.p_value)},
          {"level", num(r.level)},
          {"reject_unit_root", r.reject_unit_root},
          {"differencing_level", r.differencing_level}};
}

AdfReport get_adf(const json& j) {
  AdfReport r;
  r.spec = parse_adf_spec(j.at("spec"));
  r.lag_order = j.at("lag_order");
  r.n_obs = j.at("n_obs");
  r.n_params = j.at("n_params");
  r.t_statistic = get_num(j.at("t_statistic"));
  const auto& cv = j.at("critical_values");
  r.critical_values = {get_num(cv.at("1%")), get_num(cv.at("5%")), get_num(cv.at("10%"))};
  r.p_value = get_num(j.at("p_value"));
  r.level = get_num(j.at("level"));
  r.reject_unit_root = j.at("reject_unit_root");
  r.differencing_level = j.at("differencing_level");
  return r;
}

json granger_json(const GrangerReport& r) {
  return {{"direction", std::string(to_string(r.direction))},
          {"lag_order", r.lag_order},
          {"n_effective", r.n_effective},
          {"f_statistic", num(r.f_statistic)},
          {"p_value", num(r.p_value)},
          {"level", num(r.level)},
          {"reject_noncausality", r.reject_noncausality}};
}

GrangerReport get_granger(const json& j) {
  GrangerReport r;
  r.direction = j.at("direction") == "x_to_y" ? CausalDirection::x_to_y : CausalDirection::y_to_x;
  r.lag_order = j.at("lag_order");
  r.n_effective = j.at("n_effective");
  r.f_statistic = get_num(j.at("f_statistic"));
  r.p_value = get_num(j.at("p_value"));
  r.level = get_num(j.at("level"));
  r.reject_noncausality = j.at("reject_noncausality");
  return r;
}

json criteria_json(const vol::InformationCriteria& c) {
  return {{"aic", num(c.aic)},         {"sic", num(c.sic)},         {"hqc", num(c.hqc)},
          {"aic_per_obs", num(c.aic_per_obs)}, {"sic_per_obs", num(c.sic_per_obs)},
          {"hqc_per_obs", num(c.hqc_per_obs)}};
}

vol::InformationCriteria get_criteria(const json& j) {
  return {get_num(j.at("aic")),         get_num(j.at("sic")),         get_num(j.at("hqc")),
          get_num(j.at("aic_per_obs")), get_num(j.at("sic_per_obs")), get_num(j.at("hqc_per_obs"))};
}

json fit_json(const vol::VolatilityFit& f) {
  json params = json::object();
  json names = json::array();
  for (std::size_t i = 0; i < f.params.names.size(); ++i) {
    names.push_back(f.params.names[i]);
    params[f.params.names[i]] = num(f.params.values[i]);
  }
  return {{"family", std::string(vol::to_string(f.family))},
          {"model", std::string(vol::display_name(f.family))},
          {"egarch_form", f.egarch_form == vol::EgarchForm::nelson ? "nelson" : "squared"},
          {"parameter_order", names},
          {"params", params},
          {"mean", num(f.mean)},
          {"mean_estimated", f.mean_estimated},
          {"log_likelihood", num(f.log_likelihood)},
          {"n_obs", f.n_obs},
          {"n_params", f.n_params},
          {"criteria", criteria_json(f.criteria)},
          {"conditional_variance", series_json(f.conditional_variance)},
          {"last_residual", num(f.last_residual)},
          {"initial_variance", num(f.initial_variance)},
          {"converged", f.converged},
          {"iterations", f.iterations}};
}

vol::VolatilityFit get_fit(const json& j) {
  vol::NamedParams params;
  for (const auto& name : j.at("parameter_order")) {
    params.names.push_back(name);
    params.values.push_back(get_num(j.at("params").at(name.get<std::string>())));
  }
  return vol::VolatilityFit{
      .family = get_family(j.at("family")),
      .egarch_form = j.at("egarch_form") == "nelson" ? vol::EgarchForm::nelson : vol::EgarchForm::squared,
      .params = std::move(params),
      .mean = get_num(j.at("mean")),
      .mean_estimated = j.at("mean_estimated"),
      .log_likelihood = get_num(j.at("log_likelihood")),
      .n_obs = j.at("n_obs"),
      .n_params = j.at("n_params"),
      .criteria = get_criteria(j.at("criteria")),
      .conditional_variance = get_series(j.at("conditional_variance")),
      .last_residual = get_num(j.at("last_residual")),
      .initial_variance = get_num(j.at("initial_variance")),
      .converged = j.at("converged"),
      .iterations = j.at("iterations"),
  };
}

json families_json(const std::vector<vol::Family>& fams) {
  json out = json::array();
  for (auto f : fams) out.push_back(std::string(vol::to_string(f)));
  return out;
}

std::vector<vol::Family> get_families(const json& j) {
  std::vector<vol::Family> out;
  for (const auto& f : j) out.push_back(get_family(f));
  return out;
}

json forecast_json(const vol::VarianceForecast& f) {
  return {{"horizon", f.horizon}, {"origin_timestamp", time_json(f.origin_timestamp)}, {"variances", nums(f.variances)}};
}

json comparison_json(const ModelComparisonSection& s) {
  json ranked = json::array();
  for (const auto& f : s.comparison.ranked) ranked.push_back(fit_json(f));
  json excluded = json::array();
  for (const auto& e : s.comparison.excluded) {
    excluded.push_back({{"family", std::string(vol::to_string(e.family))}, {"reason", e.reason}});
  }
  json out = {{"ranked", ranked},
              {"excluded", excluded},
              {"sic_order", families_json(s.comparison.sic_order)},
              {"hqc_order", families_json(s.comparison.hqc_order)}};
  if (s.forecast) out["forecast"] = forecast_json(*s.forecast);
  return out;
}

ModelComparisonSection get_comparison(const json& j) {
  ModelComparisonSection s;
  for (const auto& f : j.at("ranked")) s.comparison.ranked.push_back(get_fit(f));
  for (const auto& e : j.at("excluded")) s.comparison.excluded.push_back({get_family(e.at("family")), e.at("reason")});
  s.comparison.sic_order = get_families(j.at("sic_order"));
  s.comparison.hqc_order = get_families(j.at("hqc_order"));
  if (j.contains("forecast")) {
    const auto& f = j.at("forecast");
    s.forecast = vol::VarianceForecast{f.at("horizon"), get_nums(f.at("variances")), get_time(f.at("origin_timestamp"))};
  }
  return s;
}

json correlogram_json(const std::vector<CorrelogramRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"lag", r.lag}, {"acf", num(r.acf)}, {"pacf", num(r.pacf)}, {"q_stat", num(r.q_stat)},
                   {"q_pvalue", num(r.q_pvalue)}});
  }
  return out;
}

std::vector<CorrelogramRow> get_correlogram(const json& j) {
  std::vector<CorrelogramRow> out;
  for (const auto& r : j) {
    out.push_back({r.at("lag"), get_num(r.at("acf")), get_num(r.at("pacf")), get_num(r.at("q_stat")),
                   get_num(r.at("q_pvalue"))});
  }
  return out;
}

}  // namespace json_io

namespace {

using namespace json_io;

json report_json(const PipelineReport& r) {
  const auto& p = r.provenance;
  const auto& a = r.alignment;
  json out = {
      {"provenance",
       {{"funding", {{"path", p.funding_path}, {"sha256", p.funding_sha256}}},
        {"price", {{"path", p.price_path}, {"sha256", p.price_sha256}}},
        {"config", p.config},
        {"seed", p.seed}}},
      {"alignment",
       {{"funding_rows", a.funding_rows},
        {"price_rows", a.price_rows},
        {"funding_filled", a.funding_filled},
        {"price_filled", a.price_filled},
        {"common_rows", a.common_rows},
        {"dropped_funding", a.dropped_funding},
        {"dropped_price", a.dropped_price},
        {"first", time_json(a.first)},
        {"last", time_json(a.last)}}},
      {"labels", {{"funding", r.funding_label}, {"price", r.price_label}}},
      {"skipped_stages", r.skipped_stages},
      {"partial", r.partial},
  };
  if (r.arch) out["arch"] = arch_json(*r.arch);
  if (r.adf) {
    json funding = json::array(), price = json::array();
    for (const auto& row : r.adf->funding) funding.push_back(adf_json(row));
    for (const auto& row : r.adf->price) price.push_back(adf_json(row));
    out["adf_funding"] = funding;
    out["adf_price"] = price;
    out["integration_order"] = {{"funding", r.adf->funding_integration_order},
                                {"price", r.adf->price_integration_order}};
  }
  if (r.granger) {
    out["granger"] = {{"lag_order", r.granger->lag_order},
                      {"lag_selected", r.granger->lag_selected},
                      {"price_to_funding", granger_json(r.granger->price_to_funding)},
                      {"funding_to_price", granger_json(r.granger->funding_to_price)}};
  }
  if (r.model_comparison) out["model_comparison"] = comparison_json(*r.model_comparison);
  if (r.diagnostics) {
    out["diagnostics"] = {{"series", correlogram_json(r.diagnostics->series)},
                          {"squared", correlogram_json(r.diagnostics->squared)}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text tables.

std::string fmt(const char* format, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string fixed6(double v) { return fmt("%.6f", v); }
std::string prob(double v) { return fmt("%.4f", v); }

/// First column left-aligned, the rest right-aligned, two spaces between.
std::string render(const std::string& title, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  std::ostringstream out;
  out << title << '\n' << std::string(total > 2 ? total - 2 : 0, '=') << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string pad(width[i] - row[i].size(), ' ');
      if (i > 0) line += "  ";
      line += i == 0 ? row[i] + pad : pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
    if (r == 0) out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  }
  return out.str();
}

std::string exogenous(AdfSpec spec) {
  switch (spec) {
    case AdfSpec::none: return "None";
    case AdfSpec::constant: return "Constant";
    case AdfSpec::constant_and_trend: return "Constant and Linear Trend";
  }
  return "";
}

std::string adf_table(const std::string& label, const std::vector<AdfReport>& rows, std::size_t order) {
  std::vector<std::vector<std::string>> table{
      {"Test for Unit root in", "Exogenous", "t-Statistic", "Probability", "1% level", "5% level", "10% level"}};
  for (const auto& r : rows) {
    table.push_back({r.differencing_level == 0 ? "Level" : "First difference", exogenous(r.spec),
                     fixed6(r.t_statistic), prob(r.p_value), fixed6(r.critical_values.one),
                     fixed6(r.critical_values.five), fixed6(r.critical_values.ten)});
  }
  return render("Stationarity in " + label, table) + "Integration order (constant): I(" + std::to_string(order) +
         ")\n";
}

std::string text_tables(const PipelineReport& r) {
  std::ostringstream out;
  if (r.arch) {
    const auto& a = *r.arch;
    const std::string p = std::to_string(a.lag_order);
    std::vector<std::vector<std::string>> t{{"Heteroskedasticity Test: ARCH", "lags = " + p},
                                            {"F-statistic", fixed6(a.f_statistic)},
                                            {"Probability of F", prob(a.f_pvalue)},
                                            {"Obs*R-squared", fixed6(a.lm_statistic)},
                                            {"Probability of LM Statistic (Chi-Square(" + p + "))", prob(a.lm_pvalue)},
                                            {"Variables", ""},
                                            {"Probability of C", prob(a.constant_pvalue)}};
    for (std::size_t i = 0; i < a.alpha_estimates.size(); ++i) {
      t.push_back({"value of alpha" + std::to_string(i + 1) + "(squared residuals)", fmt("%.3f", a.alpha_estimates[i])});
    }
    out << render("ARCH Test results", t) << '\n';
  }
  if (r.adf) {
    out << adf_table(r.funding_label, r.adf->funding, r.adf->funding_integration_order) << '\n';
    out << adf_table(r.price_label, r.adf->price, r.adf->price_integration_order) << '\n';
  }
  if (r.granger) {
    const auto& g = *r.granger;
    out << render("Causality test results (lags = " + std::to_string(g.lag_order) + ")",
                  {{"Null Hypothesis", "F-statistic", "Probability"},
                   {r.price_label + " does not Granger Cause " + r.funding_label, fmt("%.5f", g.price_to_funding.f_statistic),
                    fmt("%.3g", g.price_to_funding.p_value)},
                   {r.funding_label + " does not Granger Cause " + r.price_label, fmt("%.5f", g.funding_to_price.f_statistic),
                    fmt("%.3g", g.funding_to_price.p_value)}})
        << '\n';
  }
  if (r.model_comparison) {
    const auto& c = r.model_comparison->comparison;
    std::vector<std::vector<std::string>> t{{"Model", "AIC", "SIC", "HQC"}};
    for (const auto& f : c.ranked) {
      t.push_back({std::string(vol::display_name(f.family)), fmt("%.5f", f.criteria.aic_per_obs),
                   fmt("%.5f", f.criteria.sic_per_obs), fmt("%.5f", f.criteria.hqc_per_obs)});
    }
    for (const auto& e : c.excluded) t.push_back({std::string(vol::display_name(e.family)) + " (excluded)", "", "", ""});
    out << render("Information Criterion for various models", t);
    if (!c.ranked.empty()) out << "Selected by AIC: " << vol::display_name(c.ranked.front().family) << '\n';
    for (const auto& e : c.excluded) out << vol::display_name(e.family) << ": " << e.reason << '\n';
    out << '\n';
    if (const auto& f = r.model_comparison->forecast) {
      std::vector<std::vector<std::string>> ft{{"Step", "Conditional variance"}};
      for (std::size_t i = 0; i < f->variances.size(); ++i) {
        ft.push_back({std::to_string(i + 1), fmt("%.6e", f->variances[i])});
      }
      out << render("Variance forecast from " + format_timestamp(f->origin_timestamp), ft) << '\n';
    }
  }
  return out.str();
}

std::string plot_csv(const PipelineReport& r) {
  std::ostringstream out;
  out << "series,lag,acf,pacf,q_stat,q_pvalue\n";
  auto rows = [&](const char* name, const std::vector<CorrelogramRow>& data) {
    for (const auto& row : data) {
      out << name << ',' << row.lag << ',' << fmt("%.17g", row.acf) << ',' << fmt("%.17g", row.pacf) << ','
          << fmt("%.17g", row.q_stat) << ',' << fmt("%.17g", row.q_pvalue) << '\n';
    }
  };
  rows("series", r.diagnostics->series);
  rows("squared", r.diagnostics->squared);
  return out.str();
}

bool has_section(const PipelineReport& r, ReportSection s) {
  switch (s) {
    case ReportSection::arch: return r.arch.has_value();
    case ReportSection::adf: return r.adf.has_value();
    case ReportSection::granger: return r.granger.has_value();
    case ReportSection::model_comparison: return r.model_comparison.has_value();
    case ReportSection::forecast: return r.model_comparison && r.model_comparison->forecast;
    case ReportSection::diagnostics: return r.diagnostics.has_value();
  }
  return false;
}

const char* section_name(ReportSection s) {
  switch (s) {
    case ReportSection::arch: return "arch";
    case ReportSection::adf: return "adf";
    case ReportSection::granger: return "granger";
    case ReportSection::model_comparison: return "model_comparison";
    case ReportSection::forecast: return "forecast";
    case ReportSection::diagnostics: return "diagnostics";
  }
  return "";
}

}  // namespace

std::string emit_report(const PipelineReport& report, ReportFormat format, std::span<const ReportSection> required) {
  for (auto s : required) {
    if (!has_section(report, s)) {
      throw Error(ErrorCode::IncompleteReport, std::string("report has no '") + section_name(s) + "' section");
    }
  }
  switch (format) {
    case ReportFormat::json: return report_json(report).dump(2) + "\n";
    case ReportFormat::text_tables: return text_tables(report);
    case ReportFormat::plot_csv:
      if (!report.diagnostics) throw Error(ErrorCode::IncompleteReport, "plot output needs the diagnostics section");
      return plot_csv(report);
  }
  return {};
}

PipelineReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    PipelineReport r;
    const auto& p = j.at("provenance");
    r.provenance.funding_path = p.at("funding").at("path");
    r.provenance.funding_sha256 = p.at("funding").at("sha256");
    r.provenance.price_path = p.at("price").at("path");
    r.provenance.price_sha256 = p.at("price").at("sha256");
    r.provenance.config = p.at("config").get<std::map<std::string, std::string>>();
    r.provenance.seed = p.at("seed");
    const auto& a = j.at("alignment");
    r.alignment.funding_rows = a.at("funding_rows");
    r.alignment.price_rows = a.at("price_rows");
    r.alignment.funding_filled = a.at("funding_filled");
    r.alignment.price_filled = a.at("price_filled");
    r.alignment.common_rows = a.at("common_rows");
    r.alignment.dropped_funding = a.at("dropped_funding");
    r.alignment.dropped_price = a.at("dropped_price");
    r.alignment.first = get_time(a.at("first"));
    r.alignment.last = get_time(a.at("last"));
    r.funding_label = j.at("labels").at("funding");
    r.price_label = j.at("labels").at("price");
    r.skipped_stages = j.at("skipped_stages").get<std::vector<std::string>>();
    r.partial = j.at("partial");
    if (j.contains("arch")) r.arch = get_arch(j.at("arch"));
    if (j.contains("adf_funding")) {
      AdfSection s;
      for (const auto& row : j.at("adf_funding")) s.funding.push_back(get_adf(row));
      for (const auto& row : j.at("adf_price")) s.price.push_back(get_adf(row));
      s.funding_integration_order = j.at("integration_order").at("funding");
      s.price_integration_order = j.at("integration_order").at("price");
      r.adf = std::move(s);
    }
    if (j.contains("granger")) {
      const auto& g = j.at("granger");
      r.granger = GrangerSection{g.at("lag_order"), g.at("lag_selected"), get_granger(g.at("price_to_funding")),
                                 get_granger(g.at("funding_to_price"))};
    }
    if (j.contains("model_comparison")) r.model_comparison = get_comparison(j.at("model_comparison"));
    if (j.contains("diagnostics")) {
      r.diagnostics = DiagnosticsSection{get_correlogram(j.at("diagnostics").at("series")),
                                         get_correlogram(j.at("diagnostics").at("squared"))};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report JSON: ") + e.what());
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

bool verify_provenance(const PipelineReport& report) {
  const auto& p = report.provenance;
  if (p.funding_path.empty() || p.price_path.empty()) return false;
  try {
    return sha256_file(p.funding_path) == p.funding_sha256 && sha256_file(p.price_path) == p.price_sha256;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace perpstat
