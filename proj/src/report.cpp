#include "growthtrend/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "growthtrend/growth.hpp"

namespace growthtrend::report {
namespace {

constexpr const char* kNa = "NA";

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string order_label(const arima::ArimaOrder& order) { return arima::to_string(order); }

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

selection::SelectionConfig selection_config(const RunConfig& config) {
  selection::SelectionConfig sc;
  sc.p_max = config.p_max;
  sc.q_max = config.q_max;
  sc.fit.seed = config.seed;
  sc.threads = config.threads;
  return sc;
}

void note_failure(Report& report, const std::string& id, const Error& e) {
  report.diagnostics.push_back(id + ": " + std::string(errc_name(e.code())) + ": " + e.what());
  report.status = std::max(report.status, status_for(e.code()));
}

}  // namespace

Status status_for(Errc code) noexcept {
  switch (code) {
    case Errc::kMalformedRow:
    case Errc::kDuplicateYear:
    case Errc::kGapInYears:
    case Errc::kNonPositiveValue:
    case Errc::kTooShort:
    case Errc::kWindowOutOfRange:
    case Errc::kBadWindow:
    case Errc::kMissingHeader:
    case Errc::kIo:
    case Errc::kUnknownId:
      return Status::kInput;
    case Errc::kBadGridConfig:
    case Errc::kInvalidArgument:
      return Status::kUsage;
    default:
      return Status::kComputation;
  }
}

std::string format_fixed(double value, int digits) {
  if (!std::isfinite(value)) return kNa;
  if (digits < 0) digits = 0;

  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  std::string repr(buf, res.ptr);

  bool negative = false;
  if (!repr.empty() && repr.front() == '-') {
    negative = true;
    repr.erase(0, 1);
  }
  const auto dot = repr.find('.');
  std::string int_part = dot == std::string::npos ? repr : repr.substr(0, dot);
  std::string frac_part = dot == std::string::npos ? std::string() : repr.substr(dot + 1);

  const auto d = static_cast<std::size_t>(digits);
  bool round_up = frac_part.size() > d && frac_part[d] >= '5';
  frac_part.resize(d, '0');

  std::string all = int_part + frac_part;
  if (round_up) {
    std::size_t i = all.size();
    while (i > 0) {
      --i;
      if (all[i] == '9') {
        all[i] = '0';
      } else {
        ++all[i];
        break;
      }
      if (i == 0) all.insert(all.begin(), '1');
    }
  }
  const std::size_t int_len = all.size() - d;
  std::string out = all.substr(0, int_len);
  if (d > 0) out += "." + all.substr(int_len);

  const bool zero = all.find_first_not_of('0') == std::string::npos;
  return negative && !zero ? "-" + out : out;
}

std::string render(const Table& table, Format format) {
  std::string out;
  if (format == Format::kCsv) {
    std::vector<std::string> cells;
    for (const auto& c : table.columns) cells.push_back(csv_field(c));
    out += join(cells, ',') + "\n";
    for (const auto& row : table.rows) {
      cells.clear();
      for (const auto& c : row) cells.push_back(csv_field(c));
      out += join(cells, ',') + "\n";
    }
    return out;
  }
  auto md_row = [](const std::vector<std::string>& cells) {
    std::string line = "|";
    for (const auto& c : cells) line += " " + c + " |";
    return line + "\n";
  };
  out += md_row(table.columns);
  out += "|";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i == 0 ? " --- |" : " ---: |");
  out += "\n";
  for (const auto& row : table.rows) out += md_row(row);
  return out;
}

Report cmd_r2(const std::vector<dataio::CountrySeries>& series, const RunConfig& config) {
  const auto grid = growth::build_grid(config.grid_points, config.grid_max);
  Report report;
  Table table{{"id", "r2_exp", "r2_lin", "diff"}, {}};
  for (const auto& s : series) {
    try {
      const auto cmp = growth::compare_fits(dataio::window(s, config.window), grid);
      table.rows.push_back({s.id, format_fixed(cmp.r2_exp, config.digits), format_fixed(cmp.r2_lin, config.digits),
                            format_fixed(cmp.diff, config.digits)});
    } catch (const Error& e) {
      note_failure(report, s.id, e);
      table.rows.push_back({s.id, kNa, kNa, kNa});
    }
  }
  report.text = render(table, config.format);
  return report;
}

Report cmd_select(const std::vector<dataio::CountrySeries>& series, const RunConfig& config) {
  const auto grid = growth::build_grid(config.grid_points, config.grid_max);
  const auto cells = selection::run_battery(series, grid, {config.window}, selection_config(config));

  Report report;
  Table table{{"id", "aic", "aicc", "bic", "order_aic", "order_aicc", "order_bic", "warnings"}, {}};
  for (const auto& cell : cells) {
    if (!cell.selection) {
      const Error e(cell.error.value_or(Errc::kAllFitsFailed), cell.message);
      note_failure(report, cell.id, e);
      table.rows.push_back({cell.id, kNa, kNa, kNa, kNa, kNa, kNa, std::string(errc_name(e.code()))});
      continue;
    }
    const auto& sel = *cell.selection;
    std::vector<std::string> row{cell.id};
    for (const auto c : selection::kAllCriteria) row.push_back(format_fixed(sel.per_criterion.at(c).chosen_rate, config.digits));
    for (const auto c : selection::kAllCriteria) row.push_back(order_label(sel.per_criterion.at(c).chosen_order));
    row.push_back(join(sel.warnings, ';'));
    for (const auto& w : sel.warnings) report.diagnostics.push_back(cell.id + ": warning: " + w);
    table.rows.push_back(std::move(row));
  }
  report.text = render(table, config.format);
  return report;
}

Report cmd_curve(const std::vector<dataio::CountrySeries>& series, const RunConfig& config, const std::string& id) {
  const dataio::CountrySeries* target = nullptr;
  for (const auto& s : series) {
    if (s.id == id) target = &s;
  }
  if (!target) throw Error(Errc::kUnknownId, "no series with id '" + id + "'");

  const auto grid = growth::build_grid(config.grid_points, config.grid_max);
  const auto windowed = dataio::window(*target, config.window);
  const auto grid_fits = selection::fit_grid(windowed, grid, selection_config(config));

  Report report;
  Table table{{"rate", "aic", "aicc", "bic", "p", "q"}, {}};
  for (const auto& fits : grid_fits) {
    std::vector<std::string> row{format_fixed(fits.rate, config.digits)};
    for (const auto c : selection::kAllCriteria) {
      try {
        row.push_back(format_fixed(selection::pick_order(fits, c).scores.get(c), config.digits));
      } catch (const Error& e) {
        row.push_back(kNa);
      }
    }
    try {
      const auto point = selection::pick_order(fits, config.criterion);
      row.push_back(std::to_string(point.best_order.p));
      row.push_back(std::to_string(point.best_order.q));
    } catch (const Error& e) {
      note_failure(report, id + "@" + format_fixed(fits.rate, config.digits), e);
      row.push_back(kNa);
      row.push_back(kNa);
    }
    table.rows.push_back(std::move(row));
  }
  report.text = render(table, config.format);
  return report;
}

}  // namespace growthtrend::report
