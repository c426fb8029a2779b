#pragma once

#include "perpstat/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perpstat {

/// How ingestion treats missing observations on the cadence grid.
enum class FillPolicy { reject, previous };

struct IngestResult {
  Series series;
  std::size_t filled = 0;  // observations synthesized by carrying the last value forward
};

/// Parses an ISO-8601 instant with an explicit UTC offset ("Z" or "+HH:MM").
[[nodiscard]] Timestamp parse_timestamp(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
[[nodiscard]] std::string format_timestamp(Timestamp t);

/// A timestamp column followed by `columns.size()` numeric columns.
struct TimestampedTable {
  std::vector<std::string> header;
  std::vector<Timestamp> timestamps;
  std::vector<std::vector<double>> columns;
};

/// Reads a header row plus rows of `timestamp,v1,...,vk`. Rows must be in
/// strictly increasing time order. Throws ParseError naming the source and line.
[[nodiscard]] TimestampedTable parse_table_csv(std::istream& in, const std::string& source,
                                               std::size_t value_columns);

/// Two-column `timestamp,value` ingestion. The cadence is the smallest spacing
/// observed (8h for a single row). Uneven spacing is rejected unless
/// `fill == FillPolicy::previous`.
[[nodiscard]] IngestResult parse_series_csv(std::istream& in, const std::string& source,
                                            FillPolicy fill = FillPolicy::reject);

[[nodiscard]] IngestResult read_series_csv(const std::filesystem::path& path,
                                           FillPolicy fill = FillPolicy::reject);

/// Places irregular observations on a fixed grid, carrying values forward.
[[nodiscard]] IngestResult regularize(std::vector<Timestamp> timestamps, std::vector<double> values,
                                      std::optional<Duration> cadence, FillPolicy fill,
                                      const std::string& source);

void write_series_csv(std::ostream& out, const Series& s, std::string_view value_header = "value");

}  // namespace perpstat
