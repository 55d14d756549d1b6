#include "growthtrend/growth.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "growthtrend/error.hpp"

namespace growthtrend::growth {

GrowthGrid build_grid(int n_points, double max_rate) {
  if (n_points < 2 || !(max_rate > 0.0) || !std::isfinite(max_rate)) {
    throw Error(Errc::kBadGridConfig, "grid needs at least 2 points and a positive finite maximum rate");
  }
  GrowthGrid grid;
  grid.rates.resize(static_cast<std::size_t>(n_points));
  const int last = n_points - 1;
  for (int k = 0; k < n_points; ++k) {
    grid.rates[static_cast<std::size_t>(k)] = max_rate * static_cast<double>(k) / static_cast<double>(last);
  }
  grid.rates.back() = max_rate;
  return grid;
}

std::vector<double> exp_regressor(double rate, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = std::pow(1.0 + rate, static_cast<double>(t));
  return out;
}

std::vector<double> diff_exp_regressor(double rate, std::size_t n) {
  if (n < 2) return {};
  std::vector<double> out(n - 1);
  for (std::size_t t = 0; t + 1 < n; ++t) out[t] = rate * std::pow(1.0 + rate, static_cast<double>(t));
  return out;
}

double ols_r2(std::span<const double> y, const std::vector<std::vector<double>>& columns) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const auto k = static_cast<Eigen::Index>(columns.size() + 1);
  if (n < k + 1) {
    throw Error(Errc::kRankDeficient, "OLS needs more observations than coefficients");
  }
  Eigen::MatrixXd x(n, k);
  x.col(0).setOnes();
  for (Eigen::Index j = 1; j < k; ++j) {
    const auto& col = columns[static_cast<std::size_t>(j - 1)];
    if (static_cast<Eigen::Index>(col.size()) != n) {
      throw Error(Errc::kInvalidArgument, "regressor length differs from response length");
    }
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = col[static_cast<std::size_t>(i)];
  }
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);

  const double mean = yv.mean();
  const double sst = (yv.array() - mean).square().sum();
  if (!(sst > 0.0)) throw Error(Errc::kZeroVariance, "response is constant; R^2 undefined");

  Eigen::MatrixXd normalized = x;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double norm = normalized.col(j).norm();
    if (!(norm > 0.0)) throw Error(Errc::kRankDeficient, "design has a zero column");
    normalized.col(j) /= norm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(normalized);
  qr.setThreshold(1e-12);
  if (qr.rank() < k) throw Error(Errc::kRankDeficient, "design matrix is rank deficient");

  const Eigen::VectorXd coef = qr.solve(yv);
  const double ssr = (yv - normalized * coef).squaredNorm();
  return 1.0 - ssr / sst;
}

R2Comparison compare_fits(const dataio::CountrySeries& series, const GrowthGrid& grid) {
  const std::size_t n = series.size();
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i);

  R2Comparison out;
  out.id = series.id;
  out.r2_lin = ols_r2(series.values, {t});

  bool any = false;
  for (const double rate : grid.rates) {
    if (rate <= 0.0) continue;
    const double r2 = ols_r2(series.values, {exp_regressor(rate, n)});
    if (!any || r2 > out.r2_exp) {
      out.r2_exp = r2;
      out.best_rate = rate;
      any = true;
    }
  }
  if (!any) throw Error(Errc::kBadGridConfig, "grid has no positive growth rate for the exponential fit");
  out.diff = out.r2_lin - out.r2_exp;
  return out;
}

}  // namespace growthtrend::growth
