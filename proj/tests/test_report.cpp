#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "growthtrend/error.hpp"
#include "growthtrend/report.hpp"
#include "support/synthetic.hpp"

using namespace growthtrend;
using namespace growthtrend::report;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig quick_config() {
  RunConfig c;
  c.grid_points = 5;
  c.p_max = 1;
  c.q_max = 1;
  return c;
}

}  // namespace

TEST_CASE("fixed formatting rounds half away from zero") {
  CHECK(format_fixed(0.06, 4) == "0.0600");
  CHECK(format_fixed(0.0, 4) == "0.0000");
  CHECK(format_fixed(0.00005, 4) == "0.0001");
  CHECK(format_fixed(-0.00005, 4) == "-0.0001");
  CHECK(format_fixed(1.00005, 4) == "1.0001");
  CHECK(format_fixed(-0.00004, 4) == "0.0000");
  CHECK(format_fixed(-0.0155, 3) == "-0.016");
  CHECK(format_fixed(2.5, 0) == "3");
  CHECK(format_fixed(-2.5, 0) == "-3");
  CHECK(format_fixed(9.99995, 4) == "10.0000");
  CHECK(format_fixed(123.456, 1) == "123.5");
  CHECK(format_fixed(1e20, 2) == "100000000000000000000.00");
  CHECK(format_fixed(0.9910, 4) == "0.9910");
  CHECK(format_fixed(std::numeric_limits<double>::quiet_NaN(), 4) == "NA");
  CHECK(format_fixed(-std::numeric_limits<double>::infinity(), 4) == "NA");
}

TEST_CASE("every numeric cell has exactly the requested decimals") {
  for (int digits = 0; digits <= 8; ++digits) {
    for (const double v : {0.0, 0.123456789, -7.5, 1234.5678, 1e-9}) {
      const auto s = format_fixed(v, digits);
      const auto dot = s.find('.');
      if (digits == 0) {
        CHECK(dot == std::string::npos);
      } else {
        REQUIRE(dot != std::string::npos);
        CHECK(s.size() - dot - 1 == static_cast<std::size_t>(digits));
      }
    }
  }
}

TEST_CASE("rendering") {
  const Table t{{"id", "order"}, {{"A", "(1,1,2)"}, {"say \"hi\"", "x"}}};
  CHECK(render(t, Format::kCsv) == "id,order\nA,\"(1,1,2)\"\n\"say \"\"hi\"\"\",x\n");
  CHECK(render(t, Format::kMarkdown) == "| id | order |\n| --- | ---: |\n| A | (1,1,2) |\n| say \"hi\" | x |\n");
}

TEST_CASE("exit status mapping") {
  CHECK(status_for(Errc::kGapInYears) == Status::kInput);
  CHECK(status_for(Errc::kWindowOutOfRange) == Status::kInput);
  CHECK(status_for(Errc::kUnknownId) == Status::kInput);
  CHECK(status_for(Errc::kBadGridConfig) == Status::kUsage);
  CHECK(status_for(Errc::kZeroVariance) == Status::kComputation);
  CHECK(status_for(Errc::kAllFitsFailed) == Status::kComputation);
}

TEST_CASE("r2 table on the fixture") {
  const auto series = dataio::read_csv_file(GT_FIXTURE);
  const auto r = cmd_r2(series, RunConfig{});
  const auto l = lines(r.text);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "id,r2_exp,r2_lin,diff");
  CHECK(l[1].rfind("Linearia,", 0) == 0);
  CHECK(l[2].rfind("Expansia,", 0) == 0);
  CHECK(l[3].rfind("Mixland,", 0) == 0);
  CHECK(r.status == Status::kOk);
  CHECK(r.diagnostics.empty());
}

TEST_CASE("r2 rows with errors print NA and set the status") {
  std::vector<dataio::CountrySeries> series{testing::linear_series(1),
                                            testing::make_series("flat", 1960, std::vector<double>(54, 3.0))};
  auto r = cmd_r2(series, RunConfig{});
  auto l = lines(r.text);
  REQUIRE(l.size() == 3);
  CHECK(l[2] == "flat,NA,NA,NA");
  CHECK(r.status == Status::kComputation);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].find("flat") == 0);

  RunConfig late;
  late.window = {1990, 2020};
  r = cmd_r2(series, late);
  CHECK(r.status == Status::kInput);
  CHECK(lines(r.text)[1] == "lin1,NA,NA,NA");
}

TEST_CASE("exact linear series: r2_lin is one") {
  std::vector<double> v(54);
  for (std::size_t t = 0; t < 54; ++t) v[t] = 100.0 + 3.0 * static_cast<double>(t);
  const auto r = cmd_r2({testing::make_series("L", 1960, v)}, RunConfig{});
  const auto row = lines(r.text)[1];
  CHECK(row.find(",1.0000,") != std::string::npos);
}

TEST_CASE("select table shape and determinism") {
  const auto series = dataio::read_csv_file(GT_FIXTURE);
  const auto config = quick_config();
  const auto a = cmd_select(series, config);
  const auto b = cmd_select(series, config);
  CHECK(a.text == b.text);
  const auto l = lines(a.text);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "id,aic,aicc,bic,order_aic,order_aicc,order_bic,warnings");
  CHECK(l[1].rfind("Linearia,", 0) == 0);
  CHECK(l[1].find("\"(") != std::string::npos);

  auto md = config;
  md.format = Format::kMarkdown;
  CHECK(lines(cmd_select(series, md).text)[0] == "| id | aic | aicc | bic | order_aic | order_aicc | order_bic | warnings |");
}

TEST_CASE("select reports uncomputable cells as NA") {
  auto s = testing::linear_series(2);
  s.years.resize(30);
  s.values.resize(30);
  const auto r = cmd_select({s}, quick_config());
  CHECK(lines(r.text)[1] == "lin2,NA,NA,NA,NA,NA,NA,WindowOutOfRange");
  CHECK(r.status == Status::kInput);
}

TEST_CASE("curve has one row per grid rate") {
  const auto series = dataio::read_csv_file(GT_FIXTURE);
  const auto r = cmd_curve(series, quick_config(), "Expansia");
  const auto l = lines(r.text);
  REQUIRE(l.size() == 6);
  CHECK(l[0] == "rate,aic,aicc,bic,p,q");
  CHECK(l[1].rfind("0.0000,", 0) == 0);
  CHECK(l[3].rfind("0.0300,", 0) == 0);
  CHECK(l[5].rfind("0.0600,", 0) == 0);
  try {
    cmd_curve(series, quick_config(), "Atlantis");
    FAIL("expected UnknownId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kUnknownId);
  }
}
