/*
 * C interface to the growthtrend library.
 *
 * Every function returns a gt_status (GT_OK on success). On failure a message
 * describing the most recent error on the calling thread is available from
 * gt_last_error(). Handles are opaque and must be released with the matching
 * *_free function; passing NULL to a *_free function is a no-op.
 */
#ifndef GROWTHTREND_GROWTHTREND_H_
#define GROWTHTREND_GROWTHTREND_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GROWTHTREND_BUILDING)
#    define GT_API __declspec(dllexport)
#  else
#    define GT_API __declspec(dllimport)
#  endif
#else
#  define GT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int gt_status;

enum {
  GT_OK = 0,
  GT_ERR_NULL_ARGUMENT = 1,
  GT_ERR_OUT_OF_MEMORY = 2,
  GT_ERR_INTERNAL = 3,

  /* Input errors. */
  GT_ERR_MALFORMED_ROW = 10,
  GT_ERR_DUPLICATE_YEAR = 11,
  GT_ERR_GAP_IN_YEARS = 12,
  GT_ERR_NON_POSITIVE_VALUE = 13,
  GT_ERR_TOO_SHORT = 14,
  GT_ERR_WINDOW_OUT_OF_RANGE = 15,
  GT_ERR_BAD_WINDOW = 16,
  GT_ERR_MISSING_HEADER = 17,
  GT_ERR_IO = 18,

  /* Estimation errors. */
  GT_ERR_NON_STATIONARY_PARAMS = 30,
  GT_ERR_NUMERICAL_BREAKDOWN = 31,
  GT_ERR_INSUFFICIENT_DATA = 32,
  GT_ERR_DEGENERATE_DESIGN = 33,
  GT_ERR_SINGULAR_HESSIAN = 34,
  GT_ERR_UNKNOWN_COEFFICIENT = 35,

  GT_ERR_BAD_GRID_CONFIG = 50,
  GT_ERR_RANK_DEFICIENT = 51,
  GT_ERR_ZERO_VARIANCE = 52,

  GT_ERR_AICC_UNDEFINED = 70,
  GT_ERR_ALL_FITS_FAILED = 71,
  GT_ERR_UNKNOWN_ID = 72,

  GT_ERR_INVALID_ARGUMENT = 90
};

typedef enum { GT_FORMAT_CSV = 0, GT_FORMAT_MARKDOWN = 1 } gt_format;

typedef enum { GT_CRITERION_AIC = 0, GT_CRITERION_AICC = 1, GT_CRITERION_BIC = 2 } gt_criterion;

/* Process exit status a report maps to: 0 ok, 2 input error, 3 computation
 * failure. */
typedef enum { GT_EXIT_OK = 0, GT_EXIT_USAGE = 1, GT_EXIT_INPUT = 2, GT_EXIT_COMPUTATION = 3 } gt_exit_status;

typedef struct gt_run_config {
  int start_year;
  int end_year;
  int grid_points;
  double grid_max;
  int max_p;
  int max_q;
  gt_criterion criterion; /* selects the p,q columns of the curve table */
  gt_format format;
  uint64_t seed;
  int digits;
  unsigned threads; /* 0 means one per hardware thread */
} gt_run_config;

typedef struct gt_dataset gt_dataset;
typedef struct gt_report gt_report;

GT_API const char* gt_version(void);
GT_API const char* gt_last_error(void);
GT_API const char* gt_status_name(gt_status status);

/* Fills `config` with the defaults: 1960-2013, 50 rates up to 0.06, p,q <= 3,
 * AIC, CSV, seed 0, 4 digits, one thread. */
GT_API void gt_run_config_init(gt_run_config* config);

GT_API gt_status gt_dataset_load_file(const char* path, gt_dataset** out);
GT_API gt_status gt_dataset_load_buffer(const char* data, size_t size, gt_dataset** out);
GT_API void gt_dataset_free(gt_dataset* dataset);
GT_API size_t gt_dataset_count(const gt_dataset* dataset);
/* Borrowed pointer valid for the lifetime of the dataset. */
GT_API gt_status gt_dataset_id(const gt_dataset* dataset, size_t index, const char** id);
GT_API gt_status gt_dataset_span(const gt_dataset* dataset, size_t index, int* first_year, int* last_year);

/* Table of R^2 for the best exponential and the linear fit per series. */
GT_API gt_status gt_run_r2(const gt_dataset* dataset, const gt_run_config* config, gt_report** out);
/* Chosen growth rate and ARIMA order per series under AIC, AICc and BIC. */
GT_API gt_status gt_run_select(const gt_dataset* dataset, const gt_run_config* config, gt_report** out);
/* Criterion values across the growth-rate grid for one series. */
GT_API gt_status gt_run_curve(const gt_dataset* dataset, const gt_run_config* config, const char* id,
                              gt_report** out);

GT_API void gt_report_free(gt_report* report);
/* Rendered table, NUL-terminated; borrowed from the report. */
GT_API const char* gt_report_text(const gt_report* report);
GT_API size_t gt_report_diagnostic_count(const gt_report* report);
GT_API const char* gt_report_diagnostic(const gt_report* report, size_t index);
GT_API gt_exit_status gt_report_exit_status(const gt_report* report);

/* Exact Gaussian ARMA log-likelihood of a zero-mean series. */
GT_API gt_status gt_arma_loglik(const double* z, size_t n, const double* ar, size_t p, const double* ma, size_t q,
                                double sigma2, double* loglik);

#ifdef __cplusplus
}
#endif

#endif /* GROWTHTREND_GROWTHTREND_H_ */
