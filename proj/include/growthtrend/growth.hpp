#pragma once

#include <span>
#include <string>
#include <vector>

#include "growthtrend/dataio.hpp"

namespace growthtrend::growth {

inline constexpr int kDefaultGridPoints = 50;
inline constexpr double kDefaultGridMax = 0.06;

// Candidate per-year growth rates; rates[0] is exactly zero.
struct GrowthGrid {
  std::vector<double> rates;

  std::size_t size() const noexcept { return rates.size(); }
  double step() const { return rates.size() < 2 ? 0.0 : rates[1] - rates[0]; }
};

// `n_points` equally spaced rates from 0 to `max_rate` inclusive.
GrowthGrid build_grid(int n_points = kDefaultGridPoints, double max_rate = kDefaultGridMax);

// (1 + rate)^t for t = 0..n-1.
std::vector<double> exp_regressor(double rate, std::size_t n);

// Differenced exponential regressor: rate * (1 + rate)^t for t = 0..n-2, the
// first difference of exp_regressor(rate, n).
std::vector<double> diff_exp_regressor(double rate, std::size_t n);

// R^2 = 1 - SSR/SST of an OLS fit of y on the given columns plus an
// intercept. Throws Error(kRankDeficient) or Error(kZeroVariance).
double ols_r2(std::span<const double> y, const std::vector<std::vector<double>>& columns);

struct R2Comparison {
  std::string id;
  double r2_exp = 0.0;
  double best_rate = 0.0;
  double r2_lin = 0.0;
  double diff = 0.0;  // r2_lin - r2_exp
};

// Linear fit y ~ 1 + t against the best exponential fit y ~ 1 + (1+r)^t over
// the positive grid rates.
R2Comparison compare_fits(const dataio::CountrySeries& series, const GrowthGrid& grid);

}  // namespace growthtrend::growth
