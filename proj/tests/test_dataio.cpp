#include <doctest.h>

#include <random>
#include <string>

#include "growthtrend/dataio.hpp"
#include "growthtrend/error.hpp"

using namespace growthtrend;
using dataio::parse_csv;

namespace {

std::string years_csv(const std::string& id, int first, int last, double start = 100.0) {
  std::string out;
  for (int y = first; y <= last; ++y) out += id + "," + std::to_string(y) + "," + std::to_string(start + (y - first)) + "\n";
  return out;
}

Errc error_of(const std::string& text) {
  try {
    parse_csv(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("parse keeps first-appearance order and sorts years") {
  std::string text = "id,year,value\n";
  text += years_csv("B", 1990, 1999);
  text += "A,2001,5.5\n";
  text += years_csv("A", 1991, 2000);
  const auto s = parse_csv(text);
  REQUIRE(s.size() == 2);
  CHECK(s[0].id == "B");
  CHECK(s[1].id == "A");
  CHECK(s[1].size() == 11);
  CHECK(s[1].first_year() == 1991);
  CHECK(s[1].last_year() == 2001);
  CHECK(s[1].values.back() == 5.5);
}

TEST_CASE("parse tolerates BOM, CRLF, blank lines and a leading plus") {
  std::string text = "\xEF\xBB\xBFid,year,value\r\n\r\n";
  for (int y = 2000; y < 2010; ++y) text += "X," + std::to_string(y) + ",+1e3\r\n";
  const auto s = parse_csv(text);
  REQUIRE(s.size() == 1);
  CHECK(s[0].values[0] == 1000.0);
}

TEST_CASE("parse errors") {
  const std::string header = "id,year,value\n";
  CHECK(error_of("") == Errc::kMissingHeader);
  CHECK(error_of("country,year,gdp\n" + years_csv("A", 1990, 2000)) == Errc::kMissingHeader);
  CHECK(error_of(header + "A,1990\n") == Errc::kMalformedRow);
  CHECK(error_of(header + "A,19x0,5\n") == Errc::kMalformedRow);
  CHECK(error_of(header + "A,1990,abc\n") == Errc::kMalformedRow);
  CHECK(error_of(header + ",1990,5\n") == Errc::kMalformedRow);
  CHECK(error_of(header + "A,1990,0\n") == Errc::kNonPositiveValue);
  CHECK(error_of(header + "A,1990,-3\n") == Errc::kNonPositiveValue);
  CHECK(error_of(header + years_csv("A", 1990, 2000) + "A,1995,7\n") == Errc::kDuplicateYear);
  CHECK(error_of(header + years_csv("A", 1990, 1995) + years_csv("A", 1997, 2003)) == Errc::kGapInYears);
  CHECK(error_of(header + years_csv("A", 1990, 1998)) == Errc::kTooShort);
}

TEST_CASE("file errors") {
  try {
    dataio::read_csv_file("/nonexistent/path/data.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kIo);
  }
}

TEST_CASE("fixture loads") {
  const auto s = dataio::read_csv_file(GT_FIXTURE);
  REQUIRE(s.size() == 3);
  for (const auto& c : s) {
    CHECK(c.first_year() == 1960);
    CHECK(c.last_year() == 2013);
  }
}

TEST_CASE("window sizes for the standard horizons") {
  const auto s = parse_csv("id,year,value\n" + years_csv("A", 1960, 2013))[0];
  CHECK(dataio::window(s, {1960, 2013}).size() == 54);
  const auto pre = dataio::window(s, {1960, 2007});
  CHECK(pre.size() == 48);
  CHECK(pre.values.front() == s.values.front());
  const auto late = dataio::window(s, {1970, 2013});
  CHECK(late.size() == 44);
  CHECK(late.first_year() == 1970);
  CHECK(late.values.front() == s.values[10]);
}

TEST_CASE("window errors") {
  const auto s = parse_csv("id,year,value\n" + years_csv("A", 1960, 2013))[0];
  auto code = [&](dataio::SampleWindow w) {
    try {
      dataio::window(s, w);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kInvalidArgument;
  };
  CHECK(code({2000, 1990}) == Errc::kBadWindow);
  CHECK(code({2000, 2000}) == Errc::kBadWindow);
  CHECK(code({1950, 2013}) == Errc::kWindowOutOfRange);
  CHECK(code({1960, 2020}) == Errc::kWindowOutOfRange);
  CHECK(code({2005, 2013}) == Errc::kTooShort);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(1e-3, 1e7);
  std::uniform_int_distribution<int> length(10, 60);
  std::uniform_int_distribution<int> first(1800, 2000);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<dataio::CountrySeries> all;
    const int n_series = 1 + trial % 4;
    for (int k = 0; k < n_series; ++k) {
      dataio::CountrySeries s;
      s.id = "s" + std::to_string(trial) + "_" + std::to_string(k);
      const int y0 = first(rng);
      const int n = length(rng);
      for (int i = 0; i < n; ++i) {
        s.years.push_back(y0 + i);
        s.values.push_back(value(rng));
      }
      all.push_back(std::move(s));
    }
    CHECK(parse_csv(dataio::serialize_csv(all)) == all);
  }
}
