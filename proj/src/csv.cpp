#include "perpstat/csv.hpp"

#include "perpstat/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace perpstat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > text.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  const auto res = std::from_chars(text.data() + pos, text.data() + pos + len, out);
  return res.ec == std::errc{};
}

[[noreturn]] void bad_timestamp(std::string_view text, const char* why) {
  throw Error(ErrorCode::ParseError, "invalid timestamp '" + std::string(text) + "': " + why);
}

double parse_number(std::string_view text, const std::string& source, std::size_t line_no) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError,
                source + ":" + std::to_string(line_no) + ": invalid number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  text = trim(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!read_int(text, 0, 4, y) || text.size() < 16 || text[4] != '-' || !read_int(text, 5, 2, mo) ||
      text[7] != '-' || !read_int(text, 8, 2, d) || (text[10] != 'T' && text[10] != ' ') ||
      !read_int(text, 11, 2, h) || text[13] != ':' || !read_int(text, 14, 2, mi)) {
    bad_timestamp(text, "expected YYYY-MM-DDTHH:MM");
  }
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    if (!read_int(text, pos + 1, 2, s)) bad_timestamp(text, "bad seconds");
    pos += 3;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      // Fractional seconds are accepted but truncated.
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
  }
  if (pos >= text.size()) bad_timestamp(text, "missing UTC offset");
  long offset_seconds = 0;
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '+' ? 1 : -1;
    int oh = 0, om = 0;
    if (!read_int(text, pos + 1, 2, oh)) bad_timestamp(text, "bad offset hours");
    std::size_t mpos = pos + 3;
    if (mpos < text.size() && text[mpos] == ':') ++mpos;
    if (!read_int(text, mpos, 2, om)) bad_timestamp(text, "bad offset minutes");
    pos = mpos + 2;
    offset_seconds = sign * (oh * 3600L + om * 60L);
  } else {
    bad_timestamp(text, "missing UTC offset");
  }
  if (pos != text.size()) bad_timestamp(text, "trailing characters");
  if (h > 23 || mi > 59 || s > 60) bad_timestamp(text, "time of day out of range");

  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad_timestamp(text, "calendar date out of range");
  const auto local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
  return Timestamp{local.time_since_epoch() - seconds{offset_seconds}};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss tod{t - day_point};
  std::ostringstream os;
  os << std::setfill('0') << std::setw(4) << static_cast<int>(ymd.year()) << '-' << std::setw(2)
     << static_cast<unsigned>(ymd.month()) << '-' << std::setw(2) << static_cast<unsigned>(ymd.day()) << 'T'
     << std::setw(2) << tod.hours().count() << ':' << std::setw(2) << tod.minutes().count() << ':'
     << std::setw(2) << tod.seconds().count() << 'Z';
  return os.str();
}

TimestampedTable parse_table_csv(std::istream& in, const std::string& source, std::size_t value_columns) {
  TimestampedTable table;
  table.columns.resize(value_columns);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != value_columns + 1) {
      throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line_no) + ": expected " +
                                             std::to_string(value_columns + 1) + " columns, found " +
                                             std::to_string(fields.size()));
    }
    if (!have_header) {
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    Timestamp t;
    try {
      t = parse_timestamp(fields[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!table.timestamps.empty() && t <= table.timestamps.back()) {
      throw Error(ErrorCode::ParseError,
                  source + ":" + std::to_string(line_no) + ": timestamps must be strictly increasing");
    }
    table.timestamps.push_back(t);
    for (std::size_t c = 0; c < value_columns; ++c) {
      table.columns[c].push_back(parse_number(fields[c + 1], source, line_no));
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, source + ": empty file (header row required)");
  if (table.timestamps.empty()) throw Error(ErrorCode::ParseError, source + ": no data rows");
  return table;
}

IngestResult regularize(std::vector<Timestamp> timestamps, std::vector<double> values,
                        std::optional<Duration> cadence, FillPolicy fill, const std::string& source) {
  Duration step = kEightHours;
  if (cadence) {
    step = *cadence;
  } else if (timestamps.size() >= 2) {
    step = Duration::max();
    for (std::size_t i = 1; i < timestamps.size(); ++i) step = std::min(step, timestamps[i] - timestamps[i - 1]);
  }
  std::size_t filled = 0;
  bool uneven = false;
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    const auto gap = timestamps[i] - timestamps[i - 1];
    if (gap % step != Duration::zero()) {
      throw Error(ErrorCode::UnevenSpacing, source + ": spacing before row " + std::to_string(i + 1) +
                                                " is not a multiple of the " + std::to_string(step.count()) +
                                                "s cadence");
    }
    if (gap != step) uneven = true;
  }
  if (uneven && fill == FillPolicy::reject) {
    throw Error(ErrorCode::UnevenSpacing,
                source + ": missing observations on the " + std::to_string(step.count()) +
                    "s grid (use fill=previous to carry the last value forward)");
  }
  if (!uneven) return IngestResult{Series(std::move(timestamps), std::move(values), step), 0};

  std::vector<Timestamp> ts{timestamps.front()};
  std::vector<double> vs{values.front()};
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    while (ts.back() + step < timestamps[i]) {
      ts.push_back(ts.back() + step);
      vs.push_back(vs.back());
      ++filled;
    }
    ts.push_back(timestamps[i]);
    vs.push_back(values[i]);
  }
  return IngestResult{Series(std::move(ts), std::move(vs), step), filled};
}

IngestResult parse_series_csv(std::istream& in, const std::string& source, FillPolicy fill) {
  auto table = parse_table_csv(in, source, 1);
  return regularize(std::move(table.timestamps), std::move(table.columns[0]), std::nullopt, fill, source);
}

IngestResult read_series_csv(const std::filesystem::path& path, FillPolicy fill) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  return parse_series_csv(in, path.string(), fill);
}

void write_series_csv(std::ostream& out, const Series& s, std::string_view value_header) {
  out << "timestamp," << value_header << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < s.size(); ++i) out << format_timestamp(s.timestamps()[i]) << ',' << s[i] << '\n';
}

}  // namespace perpstat
