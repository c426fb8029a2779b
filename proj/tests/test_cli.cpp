#include "catch_amalgamated.hpp"

#include "perpstat/csv.hpp"
#include "synthetic.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

const fs::path kDir = fs::temp_directory_path() / "perpstat_cli_test";

int cli(const std::string& args) {
  const std::string cmd = std::string(PERPSTAT_CLI) + " " + args + " >" + (kDir / "stdout.txt").string() + " 2>" +
                          (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Fixture {
  fs::path funding, price;
  Fixture() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
    std::tie(funding, price) = perpstat::testing::write_market(perpstat::testing::synthetic_market(1, 1200), kDir);
    std::ofstream(kDir / "fast.cfg") << "adf.max_lag = 4\ndiagnostics.max_lag = 10\n[volatility]\nfamilies = garch,igarch\n";
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("run writes a json report", "[cli]") {
  const auto& f = fixture();
  const auto out = kDir / "report.json";
  REQUIRE(cli("run --funding " + f.funding.string() + " --price " + f.price.string() + " --config " +
                   (kDir / "fast.cfg").string() + " --seed 3 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("provenance").at("seed") == 3);
  CHECK(j.contains("granger"));

  CHECK(cli("run --funding " + f.funding.string() + " --price " + f.price.string() + " --config " +
                 (kDir / "fast.cfg").string() + " --format text") == 0);
  CHECK_THAT(slurp(kDir / "stdout.txt"), ContainsSubstring("Test for Unit root in"));
  CHECK(cli("run --funding " + f.funding.string() + " --price " + f.price.string() + " --config " +
                 (kDir / "fast.cfg").string() + " --format plot") == 0);
  CHECK_THAT(slurp(kDir / "stdout.txt"), ContainsSubstring("series,lag,acf,pacf,q_stat,q_pvalue"));
}

TEST_CASE("input errors exit with 2", "[cli]") {
  const auto& f = fixture();
  CHECK(cli("run --funding " + (kDir / "missing.csv").string() + " --price " + f.price.string()) == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("run --price " + f.price.string()) == 2);

  std::ofstream(kDir / "empty.csv").close();
  CHECK(cli("run --funding " + (kDir / "empty.csv").string() + " --price " + f.price.string()) == 2);
  CHECK_THAT(slurp(kDir / "stderr.txt"), ContainsSubstring("empty.csv"));

  std::ofstream(kDir / "bad.cfg") << "no_such_key = 1\n";
  CHECK(cli("run --funding " + f.funding.string() + " --price " + f.price.string() + " --config " +
                 (kDir / "bad.cfg").string()) == 2);

  std::ofstream(kDir / "offset.csv") << "timestamp,value\n1999-01-01T04:00:00Z,1\n1999-01-01T12:00:00Z,2\n";
  CHECK(cli("run --funding " + (kDir / "offset.csv").string() + " --price " + f.price.string()) == 2);
}

TEST_CASE("stage errors exit with 3", "[cli]") {
  std::ofstream flat(kDir / "flat.csv");
  flat << "timestamp,value\n";
  for (int i = 0; i < 300; ++i) flat << perpstat::format_timestamp(perpstat::Timestamp{} + i * perpstat::kEightHours) << ",0.0001\n";
  flat.close();
  CHECK(cli("run --funding " + (kDir / "flat.csv").string() + " --price " + (kDir / "flat.csv").string()) == 3);
  CHECK_THAT(slurp(kDir / "stderr.txt"), ContainsSubstring("stage 'arch'"));
}

TEST_CASE("single tests and model commands", "[cli]") {
  const auto& f = fixture();
  CHECK(cli("test arch --input " + f.funding.string() + " --lags 1") == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt")).at("lag_order") == 1);
  CHECK(cli("test adf --input " + f.price.string() + " --spec all --max-lag 4") == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt")).size() == 3);
  CHECK(cli("test adf --input " + f.price.string() + " --level 0.07") == 2);
  CHECK(cli("test granger --x " + f.price.string() + " --y " + f.funding.string() + " --lags 2") == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt")).at("x_to_y").at("reject_noncausality") == true);

  const auto var = kDir / "variance.csv";
  CHECK(cli("fit --input " + f.funding.string() + " --family garch --variance-csv " + var.string()) == 0);
  const auto path = perpstat::read_series_csv(var).series;
  CHECK(path.size() == 1199);
  CHECK(cli("compare --input " + f.funding.string() + " --families garch,igarch") == 0);
  CHECK(cli("forecast --input " + f.funding.string() + " --family garch --horizon 5") == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt")).at("forecast").at("variances").size() == 5);
  CHECK(cli("fit --input " + f.funding.string() + " --family nope") == 2);
}

TEST_CASE("funding commands", "[cli]") {
  {
    std::ofstream m(kDir / "minutes.csv");
    m << "timestamp,interest,premium\n";
    const perpstat::Timestamp start{std::chrono::seconds{1609473600 + 60}};
    for (int i = 0; i < 960; ++i) {
      m << perpstat::format_timestamp(start + i * perpstat::kOneMinute) << ",0.0001," << (i < 480 ? 0.0 : 0.01)
        << '\n';
    }
  }
  REQUIRE(cli("funding compute --input " + (kDir / "minutes.csv").string()) == 0);
  std::istringstream lines(slurp(kDir / "stdout.txt"));
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK_THAT(nlohmann::json::parse(first).at("funding_rate").get<double>(), Catch::Matchers::WithinRel(0.0001, 1e-12));
  CHECK(nlohmann::json::parse(second).at("capped") == true);

  std::ofstream(kDir / "book.csv") << "timestamp,impact_bid,impact_ask,mark,spot,rate\n"
                                      "2021-01-01T12:00:00Z,10100,10150,10000,10000,0.0001\n";
  CHECK(cli("funding premium --input " + (kDir / "book.csv").string()) == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt")).at("premium_index") == 0.005);
  CHECK(cli("funding premium --denominator exchange --input " + (kDir / "book.csv").string()) == 0);
  CHECK(nlohmann::json::parse(slurp(kDir / "stdout.txt")).at("premium_index") == 0.01);
}
