#include "growthtrend/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "growthtrend/error.hpp"

namespace growthtrend::dataio {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  if (field.empty()) return false;
  // from_chars rejects a leading '+', which is legal in CSV exports.
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string row_context(std::size_t line_no) { return "line " + std::to_string(line_no); }

}  // namespace

void validate(const CountrySeries& series) {
  if (series.years.size() != series.values.size()) {
    throw Error(Errc::kInvalidArgument, "series '" + series.id + "': years and values differ in length");
  }
  if (series.size() < kMinSeriesLength) {
    throw Error(Errc::kTooShort, "series '" + series.id + "' has " + std::to_string(series.size()) +
                                     " observations, need at least " + std::to_string(kMinSeriesLength));
  }
  for (std::size_t i = 1; i < series.years.size(); ++i) {
    if (series.years[i] == series.years[i - 1]) {
      throw Error(Errc::kDuplicateYear,
                  "series '" + series.id + "': duplicate year " + std::to_string(series.years[i]));
    }
    if (series.years[i] != series.years[i - 1] + 1) {
      throw Error(Errc::kGapInYears, "series '" + series.id + "': years jump from " +
                                         std::to_string(series.years[i - 1]) + " to " +
                                         std::to_string(series.years[i]));
    }
  }
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const double v = series.values[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(Errc::kNonPositiveValue, "series '" + series.id + "': value at year " +
                                               std::to_string(series.years[i]) + " is not positive");
    }
  }
}

std::vector<CountrySeries> parse_csv(std::string_view text) {
  // Strip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::string> order;
  std::unordered_map<std::string, std::map<int, double>> rows;

  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto fields = split_commas(line);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "id" || fields[1] != "year" || fields[2] != "value") {
        throw Error(Errc::kMissingHeader, "expected header 'id,year,value' on " + row_context(line_no));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw Error(Errc::kMalformedRow, row_context(line_no) + ": expected 3 columns, found " +
                                           std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw Error(Errc::kMalformedRow, row_context(line_no) + ": empty id");
    int year = 0;
    double value = 0.0;
    if (!parse_number(fields[1], year)) {
      throw Error(Errc::kMalformedRow, row_context(line_no) + ": unparsable year '" + std::string(fields[1]) + "'");
    }
    if (!parse_number(fields[2], value)) {
      throw Error(Errc::kMalformedRow, row_context(line_no) + ": unparsable value '" + std::string(fields[2]) + "'");
    }
    if (!std::isfinite(value) || value <= 0.0) {
      throw Error(Errc::kNonPositiveValue, row_context(line_no) + ": value must be finite and positive");
    }

    std::string id(fields[0]);
    auto [it, inserted] = rows.try_emplace(id);
    if (inserted) order.push_back(id);
    if (!it->second.emplace(year, value).second) {
      throw Error(Errc::kDuplicateYear, row_context(line_no) + ": duplicate year " + std::to_string(year) +
                                            " for '" + id + "'");
    }
  }
  if (!header_seen) throw Error(Errc::kMissingHeader, "input is empty; expected header 'id,year,value'");

  std::vector<CountrySeries> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    CountrySeries s;
    s.id = id;
    for (const auto& [year, value] : rows.at(id)) {
      s.years.push_back(year);
      s.values.push_back(value);
    }
    validate(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CountrySeries> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string serialize_csv(const std::vector<CountrySeries>& series) {
  std::string out = "id,year,value\n";
  char num[64];
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::snprintf(num, sizeof num, "%.17g", s.values[i]);
      out += s.id;
      out += ',';
      out += std::to_string(s.years[i]);
      out += ',';
      out += num;
      out += '\n';
    }
  }
  return out;
}

CountrySeries window(const CountrySeries& series, SampleWindow w) {
  if (w.start_year >= w.end_year) {
    throw Error(Errc::kBadWindow, "window start " + std::to_string(w.start_year) + " must precede end " +
                                      std::to_string(w.end_year));
  }
  if (series.years.empty() || w.start_year < series.first_year() || w.end_year > series.last_year()) {
    throw Error(Errc::kWindowOutOfRange,
                "series '" + series.id + "' does not cover " + std::to_string(w.start_year) + "-" +
                    std::to_string(w.end_year));
  }
  const auto begin = static_cast<std::size_t>(w.start_year - series.first_year());
  const auto count = static_cast<std::size_t>(w.end_year - w.start_year + 1);

  CountrySeries out;
  out.id = series.id;
  out.years.assign(series.years.begin() + begin, series.years.begin() + begin + count);
  out.values.assign(series.values.begin() + begin, series.values.begin() + begin + count);
  if (out.size() < kMinSeriesLength) {
    throw Error(Errc::kTooShort, "window " + std::to_string(w.start_year) + "-" + std::to_string(w.end_year) +
                                     " leaves fewer than " + std::to_string(kMinSeriesLength) + " observations");
  }
  return out;
}

}  // namespace growthtrend::dataio
