#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "growthtrend/arima.hpp"
#include "growthtrend/dataio.hpp"
#include "growthtrend/error.hpp"
#include "growthtrend/growth.hpp"

namespace growthtrend::selection {

enum class Criterion { kAic, kAicc, kBic };

inline constexpr std::array<Criterion, 3> kAllCriteria{Criterion::kAic, Criterion::kAicc, Criterion::kBic};

std::string_view to_string(Criterion c) noexcept;
std::optional<Criterion> parse_criterion(std::string_view name) noexcept;

struct CriterionScores {
  double aic = 0.0;
  double aicc = 0.0;
  double bic = 0.0;

  double get(Criterion c) const noexcept;
};

// aic = 2k - 2 loglik, aicc = aic + 2k(k+1)/(n-k-1), bic = k ln n - 2 loglik.
// Throws Error(kAiccUndefined) when n <= k + 1.
CriterionScores score(double loglik, int k, int n);
CriterionScores score(const arima::FitResult& fit);

// Names of the regression coefficients in every selection design.
inline constexpr std::string_view kDriftName = "drift";
inline constexpr std::string_view kExpTrendName = "b0";

// Smallest AR root modulus below which a chosen fit is flagged as near unit root.
inline constexpr double kNearUnitRootModulus = 1.01;

struct SelectionConfig {
  int p_max = 3;
  int q_max = 3;
  arima::FitOptions fit;
  // Worker threads for the grid sweep; results never depend on this.
  unsigned threads = 1;
};

// Drift column plus, for rate > 0, the differenced exponential trend.
arima::RegressionDesign make_design(std::size_t n_levels, double rate);

// One fitted (p,q) cell at a fixed rate. `fit` is empty when fitting failed.
struct OrderFit {
  arima::ArimaOrder order;
  std::optional<arima::FitResult> fit;
  std::optional<CriterionScores> scores;
  std::string failure;
};

// All (p,q) fits at one rate; shared by the three criteria.
struct RateFits {
  double rate = 0.0;
  std::vector<OrderFit> cells;
};

struct GridPointResult {
  double rate = 0.0;
  arima::ArimaOrder best_order;
  arima::FitResult fit;
  CriterionScores scores;
};

RateFits fit_rate(const dataio::CountrySeries& series, double rate, const SelectionConfig& config);

// Step one: criterion-minimal order among the fits at one rate. Converged fits
// win over non-converged ones; ties go to smaller p+q, then smaller p.
// Throws Error(kAllFitsFailed).
GridPointResult pick_order(const RateFits& fits, Criterion criterion);

GridPointResult select_order(const dataio::CountrySeries& series, double rate, Criterion criterion,
                             const SelectionConfig& config);

struct CriterionChoice {
  double chosen_rate = 0.0;
  arima::ArimaOrder chosen_order;
  arima::FitResult fit;
  CriterionScores scores;
  // One entry per grid rate that produced a fit, in grid order.
  std::vector<GridPointResult> curve;
};

struct CountrySelection {
  std::string id;
  dataio::SampleWindow window;
  std::map<Criterion, CriterionChoice> per_criterion;
  std::vector<std::string> warnings;
};

// Step two over precomputed fits. Ties go to the smaller rate. Throws
// Error(kAllFitsFailed) when no grid point yields a fit.
CriterionChoice choose_rate(const std::vector<RateFits>& grid_fits, Criterion criterion);

std::vector<RateFits> fit_grid(const dataio::CountrySeries& series, const growth::GrowthGrid& grid,
                               const SelectionConfig& config);

CriterionChoice select_growth(const dataio::CountrySeries& series, const growth::GrowthGrid& grid,
                              Criterion criterion, const SelectionConfig& config);

// All three criteria from one shared set of fits, with diagnostics attached
// as warnings.
CountrySelection select_country(const dataio::CountrySeries& series, dataio::SampleWindow window,
                                const growth::GrowthGrid& grid, const SelectionConfig& config);

struct BatteryCell {
  std::string id;
  dataio::SampleWindow window;
  std::optional<CountrySelection> selection;
  std::optional<Errc> error;
  std::string message;
};

// Series x windows in input order. Cells that cannot be computed carry the
// error instead of a selection; the run always continues.
std::vector<BatteryCell> run_battery(const std::vector<dataio::CountrySeries>& all_series,
                                     const growth::GrowthGrid& grid,
                                     const std::vector<dataio::SampleWindow>& windows, const SelectionConfig& config);

}  // namespace growthtrend::selection
