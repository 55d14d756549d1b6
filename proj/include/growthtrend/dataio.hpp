#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace growthtrend::dataio {

// Shortest series accepted by parse_csv and window.
inline constexpr std::size_t kMinSeriesLength = 10;

// One annual level series: gapless years, strictly positive finite values.
struct CountrySeries {
  std::string id;
  std::vector<int> years;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  int first_year() const { return years.front(); }
  int last_year() const { return years.back(); }

  friend bool operator==(const CountrySeries&, const CountrySeries&) = default;
};

// Inclusive year range.
struct SampleWindow {
  int start_year = 0;
  int end_year = 0;

  friend bool operator==(const SampleWindow&, const SampleWindow&) = default;
};

// Throws Error(kInvalidArgument / kTooShort / kGapInYears / kNonPositiveValue)
// when the series violates an invariant.
void validate(const CountrySeries& series);

// Parses `id,year,value` long-format CSV. Series are returned in order of
// first appearance of their id; rows within a series may be unsorted.
std::vector<CountrySeries> parse_csv(std::string_view text);

std::vector<CountrySeries> read_csv_file(const std::string& path);

// Inverse of parse_csv, values written with round-trip precision.
std::string serialize_csv(const std::vector<CountrySeries>& series);

CountrySeries window(const CountrySeries& series, SampleWindow w);

}  // namespace growthtrend::dataio
