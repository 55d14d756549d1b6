#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthtrend/dataio.hpp"
#include "growthtrend/error.hpp"
#include "growthtrend/selection.hpp"

namespace growthtrend::report {

enum class Format { kCsv, kMarkdown };

struct RunConfig {
  dataio::SampleWindow window{1960, 2013};
  int grid_points = growth::kDefaultGridPoints;
  double grid_max = growth::kDefaultGridMax;
  int p_max = 3;
  int q_max = 3;
  // Criterion whose chosen order fills the p,q columns of the curve table.
  selection::Criterion criterion = selection::Criterion::kAic;
  Format format = Format::kCsv;
  std::uint64_t seed = 0;
  int digits = 4;
  unsigned threads = 1;
};

// Process exit statuses shared by the library and the CLI.
enum class Status : int { kOk = 0, kUsage = 1, kInput = 2, kComputation = 3 };

Status status_for(Errc code) noexcept;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// CSV quotes fields containing commas or quotes; markdown emits a pipe table
// with the same columns.
std::string render(const Table& table, Format format);

// Exactly `digits` decimals, half away from zero applied to the shortest
// round-trip decimal form of `value`. Non-finite values print as NA.
std::string format_fixed(double value, int digits);

struct Report {
  std::string text;
  std::vector<std::string> diagnostics;
  Status status = Status::kOk;
};

// id,r2_exp,r2_lin,diff
Report cmd_r2(const std::vector<dataio::CountrySeries>& series, const RunConfig& config);

// id,aic,aicc,bic,order_aic,order_aicc,order_bic,warnings
Report cmd_select(const std::vector<dataio::CountrySeries>& series, const RunConfig& config);

// rate,aic,aicc,bic,p,q; one row per grid rate. Throws Error(kUnknownId).
Report cmd_curve(const std::vector<dataio::CountrySeries>& series, const RunConfig& config, const std::string& id);

}  // namespace growthtrend::report
