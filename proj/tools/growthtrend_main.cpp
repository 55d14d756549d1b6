// Command-line front end. Links only against the C interface.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "growthtrend/growthtrend.h"

namespace {

int exit_code_for(gt_status status) {
  switch (status) {
    case GT_ERR_INVALID_ARGUMENT:
    case GT_ERR_BAD_GRID_CONFIG:
    case GT_ERR_BAD_WINDOW:
      return GT_EXIT_USAGE;
    case GT_ERR_MALFORMED_ROW:
    case GT_ERR_DUPLICATE_YEAR:
    case GT_ERR_GAP_IN_YEARS:
    case GT_ERR_NON_POSITIVE_VALUE:
    case GT_ERR_TOO_SHORT:
    case GT_ERR_WINDOW_OUT_OF_RANGE:
    case GT_ERR_MISSING_HEADER:
    case GT_ERR_IO:
    case GT_ERR_UNKNOWN_ID:
      return GT_EXIT_INPUT;
    default:
      return GT_EXIT_COMPUTATION;
  }
}

int report_error(gt_status status) {
  std::cerr << "error: " << gt_status_name(status) << ": " << gt_last_error() << "\n";
  return exit_code_for(status);
}

struct Options {
  std::string input;
  int start_year = 1960;
  int end_year = 2013;
  int grid_points = 50;
  double grid_max = 0.06;
  int max_p = 3;
  int max_q = 3;
  std::string format = "csv";
  std::string criterion = "aic";
  uint64_t seed = 0;
  int digits = 4;
  unsigned threads = 0;
  std::string id;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "CSV file with header id,year,value")->required();
  cmd->add_option("--start-year", o.start_year, "First year of the sample window")->capture_default_str();
  cmd->add_option("--end-year", o.end_year, "Last year of the sample window")->capture_default_str();
  cmd->add_option("--grid-points", o.grid_points, "Number of growth rates on the grid")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));
  cmd->add_option("--grid-max", o.grid_max, "Largest growth rate on the grid")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-p", o.max_p, "Largest AR order searched")->capture_default_str()->check(CLI::Range(0, 12));
  cmd->add_option("--max-q", o.max_q, "Largest MA order searched")->capture_default_str()->check(CLI::Range(0, 12));
  cmd->add_option("--format", o.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "markdown"}));
  cmd->add_option("--seed", o.seed, "Seed for optimizer restarts")->capture_default_str();
  cmd->add_option("--digits", o.digits, "Decimals in numeric cells")->capture_default_str()->check(CLI::Range(0, 15));
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

gt_run_config to_config(const Options& o) {
  gt_run_config c;
  gt_run_config_init(&c);
  c.start_year = o.start_year;
  c.end_year = o.end_year;
  c.grid_points = o.grid_points;
  c.grid_max = o.grid_max;
  c.max_p = o.max_p;
  c.max_q = o.max_q;
  c.format = o.format == "markdown" ? GT_FORMAT_MARKDOWN : GT_FORMAT_CSV;
  c.criterion = o.criterion == "bic" ? GT_CRITERION_BIC : o.criterion == "aicc" ? GT_CRITERION_AICC : GT_CRITERION_AIC;
  c.seed = o.seed;
  c.digits = o.digits;
  c.threads = o.threads;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear versus exponential growth trend selection for annual series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gt_version());

  Options opts;
  auto* r2 = app.add_subcommand("r2", "R^2 of the best exponential fit against the linear fit");
  auto* select = app.add_subcommand("select", "Growth rate and ARIMA(p,1,q) order chosen by AIC, AICc and BIC");
  auto* curve = app.add_subcommand("curve", "Criterion values across the growth-rate grid for one series");
  for (auto* cmd : {r2, select, curve}) add_common(cmd, opts);
  curve->add_option("--id", opts.id, "Series identifier")->required();
  curve->add_option("--criterion", opts.criterion, "Criterion whose chosen order fills the p,q columns")
      ->capture_default_str()
      ->check(CLI::IsMember({"aic", "aicc", "bic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return GT_EXIT_USAGE;
  }

  gt_dataset* dataset = nullptr;
  if (const gt_status st = gt_dataset_load_file(opts.input.c_str(), &dataset); st != GT_OK) return report_error(st);

  const gt_run_config config = to_config(opts);
  gt_report* report = nullptr;
  gt_status st = GT_OK;
  if (*r2) {
    st = gt_run_r2(dataset, &config, &report);
  } else if (*select) {
    st = gt_run_select(dataset, &config, &report);
  } else {
    st = gt_run_curve(dataset, &config, opts.id.c_str(), &report);
  }
  gt_dataset_free(dataset);
  if (st != GT_OK) return report_error(st);

  std::fputs(gt_report_text(report), stdout);
  std::fflush(stdout);
  for (size_t i = 0; i < gt_report_diagnostic_count(report); ++i) std::cerr << gt_report_diagnostic(report, i) << "\n";
  const int code = gt_report_exit_status(report);
  gt_report_free(report);
  return code;
}
