#include "catch_amalgamated.hpp"

#include "perpstat/csv.hpp"
#include "perpstat/error.hpp"

#include <sstream>

using namespace perpstat;
using Catch::Matchers::ContainsSubstring;

namespace {

IngestResult parse(const std::string& text, FillPolicy fill = FillPolicy::reject) {
  std::istringstream in(text);
  return parse_series_csv(in, "input.csv", fill);
}

std::string error_of(const std::string& text, FillPolicy fill = FillPolicy::reject) {
  try {
    (void)parse(text, fill);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("timestamps with offsets", "[csv]") {
  const auto z = parse_timestamp("2020-03-01T04:00:00Z");
  CHECK(parse_timestamp("2020-03-01T06:00:00+02:00") == z);
  CHECK(parse_timestamp("2020-02-29T23:30:00-04:30") == z);
  CHECK(parse_timestamp("2020-03-01 04:00Z") == z);
  CHECK(format_timestamp(z) == "2020-03-01T04:00:00Z");
  CHECK(z.time_since_epoch().count() == 1583035200);
  CHECK_THROWS_AS(parse_timestamp("2020-03-01T04:00:00"), Error);
  CHECK_THROWS_AS(parse_timestamp("2020-02-30T04:00:00Z"), Error);
  CHECK_THROWS_AS(parse_timestamp("20-03-01T04:00:00Z"), Error);
}

TEST_CASE("series csv round trip", "[csv]") {
  auto r = parse("timestamp,value\n2020-01-01T04:00:00Z,0.0001\n2020-01-01T12:00:00Z,-0.00025\n"
                 "2020-01-01T20:00:00Z,1e-4\n");
  REQUIRE(r.series.size() == 3);
  CHECK(r.filled == 0);
  CHECK(r.series.cadence() == kEightHours);
  CHECK(r.series[1] == -0.00025);

  std::ostringstream out;
  write_series_csv(out, r.series);
  auto again = parse(out.str());
  CHECK(again.series == r.series);
}

TEST_CASE("malformed rows name the source and line", "[csv]") {
  CHECK_THAT(error_of("t,v\n2020-01-01T04:00:00Z,abc\n"), ContainsSubstring("input.csv:2"));
  CHECK_THAT(error_of("t,v\n2020-01-01T04:00:00Z,1\n2020-01-01T12:00:00Z,1,2\n"), ContainsSubstring("input.csv:3"));
  CHECK_THAT(error_of("t,v\n2020-01-01T12:00:00Z,1\n2020-01-01T04:00:00Z,1\n"),
             ContainsSubstring("strictly increasing"));
  CHECK_THAT(error_of(""), ContainsSubstring("input.csv"));
  CHECK_THAT(error_of("timestamp,value\n"), ContainsSubstring("no data rows"));
}

TEST_CASE("gaps are rejected unless filling forward", "[csv]") {
  const std::string gappy =
      "t,v\n2020-01-01T04:00:00Z,1\n2020-01-01T12:00:00Z,2\n2020-01-02T04:00:00Z,3\n2020-01-02T12:00:00Z,4\n";
  try {
    (void)parse(gappy);
    FAIL("expected UnevenSpacing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnevenSpacing);
  }
  auto r = parse(gappy, FillPolicy::previous);
  CHECK(r.filled == 1);
  REQUIRE(r.series.size() == 5);
  CHECK(r.series[2] == 2.0);
  CHECK(r.series[3] == 3.0);

  // Off-grid spacing cannot be repaired by filling.
  try {
    (void)parse("t,v\n2020-01-01T04:00:00Z,1\n2020-01-01T12:00:00Z,2\n2020-01-01T23:00:00Z,3\n",
                FillPolicy::previous);
    FAIL("expected UnevenSpacing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnevenSpacing);
  }
}

TEST_CASE("multi-column tables", "[csv]") {
  std::istringstream in("timestamp,interest,premium\n2020-01-01T04:01:00Z,0.0001,0.0002\n"
                        "2020-01-01T04:02:00Z,0.0001,-0.0002\n");
  auto t = parse_table_csv(in, "m.csv", 2);
  CHECK(t.header == std::vector<std::string>{"timestamp", "interest", "premium"});
  CHECK(t.columns[1] == std::vector<double>{0.0002, -0.0002});
}
