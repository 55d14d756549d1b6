#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "growthtrend/arima.hpp"
#include "growthtrend/dataio.hpp"
#include "growthtrend/error.hpp"
#include "growthtrend/growthtrend.h"
#include "growthtrend/report.hpp"

struct gt_dataset {
  std::vector<growthtrend::dataio::CountrySeries> series;
};

struct gt_report {
  growthtrend::report::Report report;
};

namespace {

thread_local std::string g_last_error;

gt_status fail(gt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn` and converts any exception into a status code.
template <typename Fn>
gt_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return GT_OK;
  } catch (const growthtrend::Error& e) {
    return fail(static_cast<gt_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GT_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(GT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GT_ERR_INTERNAL, "unknown exception");
  }
}

growthtrend::report::RunConfig to_config(const gt_run_config& c) {
  using namespace growthtrend;
  report::RunConfig rc;
  rc.window = {c.start_year, c.end_year};
  rc.grid_points = c.grid_points;
  rc.grid_max = c.grid_max;
  rc.p_max = c.max_p;
  rc.q_max = c.max_q;
  switch (c.criterion) {
    case GT_CRITERION_AIC: rc.criterion = selection::Criterion::kAic; break;
    case GT_CRITERION_AICC: rc.criterion = selection::Criterion::kAicc; break;
    case GT_CRITERION_BIC: rc.criterion = selection::Criterion::kBic; break;
    default: throw Error(Errc::kInvalidArgument, "unknown criterion");
  }
  switch (c.format) {
    case GT_FORMAT_CSV: rc.format = report::Format::kCsv; break;
    case GT_FORMAT_MARKDOWN: rc.format = report::Format::kMarkdown; break;
    default: throw Error(Errc::kInvalidArgument, "unknown output format");
  }
  if (c.max_p < 0 || c.max_q < 0) throw Error(Errc::kInvalidArgument, "order bounds must be non-negative");
  if (c.digits < 0 || c.digits > 15) throw Error(Errc::kInvalidArgument, "digits must lie in [0, 15]");
  if (c.start_year >= c.end_year) throw Error(Errc::kBadWindow, "start year must precede end year");
  rc.seed = c.seed;
  rc.digits = c.digits;
  rc.threads = c.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.threads;
  return rc;
}

template <typename Fn>
gt_status run_report(const gt_dataset* dataset, const gt_run_config* config, gt_report** out, Fn&& fn) {
  if (!out) return fail(GT_ERR_NULL_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  if (!dataset || !config) return fail(GT_ERR_NULL_ARGUMENT, "dataset or config is NULL");
  return guarded([&] {
    auto report = std::make_unique<gt_report>();
    report->report = fn(dataset->series, to_config(*config));
    *out = report.release();
  });
}

}  // namespace

extern "C" {

const char* gt_version(void) { return "1.0.0"; }

const char* gt_last_error(void) { return g_last_error.c_str(); }

const char* gt_status_name(gt_status status) {
  switch (status) {
    case GT_OK: return "Ok";
    case GT_ERR_NULL_ARGUMENT: return "NullArgument";
    case GT_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    case GT_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const auto name = growthtrend::errc_name(static_cast<growthtrend::Errc>(status));
  // errc_name returns string literals, so data() is NUL-terminated.
  return name.data();
}

void gt_run_config_init(gt_run_config* config) {
  if (!config) return;
  config->start_year = 1960;
  config->end_year = 2013;
  config->grid_points = 50;
  config->grid_max = 0.06;
  config->max_p = 3;
  config->max_q = 3;
  config->criterion = GT_CRITERION_AIC;
  config->format = GT_FORMAT_CSV;
  config->seed = 0;
  config->digits = 4;
  config->threads = 1;
}

gt_status gt_dataset_load_file(const char* path, gt_dataset** out) {
  if (!out) return fail(GT_ERR_NULL_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  if (!path) return fail(GT_ERR_NULL_ARGUMENT, "path is NULL");
  return guarded([&] {
    auto ds = std::make_unique<gt_dataset>();
    ds->series = growthtrend::dataio::read_csv_file(path);
    *out = ds.release();
  });
}

gt_status gt_dataset_load_buffer(const char* data, size_t size, gt_dataset** out) {
  if (!out) return fail(GT_ERR_NULL_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  if (!data && size > 0) return fail(GT_ERR_NULL_ARGUMENT, "data is NULL");
  return guarded([&] {
    auto ds = std::make_unique<gt_dataset>();
    ds->series = growthtrend::dataio::parse_csv(std::string_view(data ? data : "", size));
    *out = ds.release();
  });
}

void gt_dataset_free(gt_dataset* dataset) { delete dataset; }

size_t gt_dataset_count(const gt_dataset* dataset) { return dataset ? dataset->series.size() : 0; }

gt_status gt_dataset_id(const gt_dataset* dataset, size_t index, const char** id) {
  if (!dataset || !id) return fail(GT_ERR_NULL_ARGUMENT, "dataset or id pointer is NULL");
  if (index >= dataset->series.size()) return fail(GT_ERR_INVALID_ARGUMENT, "series index out of range");
  *id = dataset->series[index].id.c_str();
  return GT_OK;
}

gt_status gt_dataset_span(const gt_dataset* dataset, size_t index, int* first_year, int* last_year) {
  if (!dataset || !first_year || !last_year) return fail(GT_ERR_NULL_ARGUMENT, "NULL argument");
  if (index >= dataset->series.size()) return fail(GT_ERR_INVALID_ARGUMENT, "series index out of range");
  *first_year = dataset->series[index].first_year();
  *last_year = dataset->series[index].last_year();
  return GT_OK;
}

gt_status gt_run_r2(const gt_dataset* dataset, const gt_run_config* config, gt_report** out) {
  return run_report(dataset, config, out, [](const auto& series, const auto& rc) {
    return growthtrend::report::cmd_r2(series, rc);
  });
}

gt_status gt_run_select(const gt_dataset* dataset, const gt_run_config* config, gt_report** out) {
  return run_report(dataset, config, out, [](const auto& series, const auto& rc) {
    return growthtrend::report::cmd_select(series, rc);
  });
}

gt_status gt_run_curve(const gt_dataset* dataset, const gt_run_config* config, const char* id, gt_report** out) {
  if (!id) return fail(GT_ERR_NULL_ARGUMENT, "id is NULL");
  return run_report(dataset, config, out, [id](const auto& series, const auto& rc) {
    return growthtrend::report::cmd_curve(series, rc, id);
  });
}

void gt_report_free(gt_report* report) { delete report; }

const char* gt_report_text(const gt_report* report) { return report ? report->report.text.c_str() : ""; }

size_t gt_report_diagnostic_count(const gt_report* report) { return report ? report->report.diagnostics.size() : 0; }

const char* gt_report_diagnostic(const gt_report* report, size_t index) {
  if (!report || index >= report->report.diagnostics.size()) return nullptr;
  return report->report.diagnostics[index].c_str();
}

gt_exit_status gt_report_exit_status(const gt_report* report) {
  return report ? static_cast<gt_exit_status>(report->report.status) : GT_EXIT_COMPUTATION;
}

gt_status gt_arma_loglik(const double* z, size_t n, const double* ar, size_t p, const double* ma, size_t q,
                         double sigma2, double* loglik) {
  if (!loglik || (!z && n > 0) || (!ar && p > 0) || (!ma && q > 0)) return fail(GT_ERR_NULL_ARGUMENT, "NULL argument");
  return guarded([&] {
    *loglik = growthtrend::arima::kalman_loglik(std::span<const double>(z, n), std::span<const double>(ar, p),
                                                std::span<const double>(ma, q), sigma2);
  });
}

}  // extern "C"
