#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace growthtrend::arima {

struct ArimaOrder {
  int p = 0;
  int d = 1;
  int q = 0;

  friend bool operator==(const ArimaOrder&, const ArimaOrder&) = default;
};

std::string to_string(const ArimaOrder& order);

// Named regressor columns aligned with the differenced series.
class RegressionDesign {
 public:
  RegressionDesign() = default;
  explicit RegressionDesign(std::size_t rows) : rows_(rows) {}

  // Throws Error(kInvalidArgument) on a length mismatch or duplicate name.
  void add(std::string name, std::vector<double> column);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return columns_.size(); }
  bool empty() const noexcept { return columns_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }

 private:
  std::size_t rows_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

struct Coefficient {
  std::string name;
  double value = 0.0;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

// Optimizer state retained so standard errors can be computed after the fit.
struct FitState;

struct FitResult {
  ArimaOrder order;
  std::vector<double> ar;  // phi_1..phi_p of 1 - sum phi_j B^j
  std::vector<double> ma;  // theta_1..theta_q of 1 + sum theta_j B^j
  std::vector<Coefficient> beta;
  double sigma2 = 0.0;
  double loglik = 0.0;
  int n_obs = 0;
  int k_params = 0;
  bool converged = false;
  double ar_root_min_modulus = std::numeric_limits<double>::infinity();
  int evaluations = 0;

  std::shared_ptr<const FitState> state;

  // Throws Error(kUnknownCoefficient).
  double coefficient(const std::string& name) const;
  bool has_coefficient(const std::string& name) const noexcept;
};

struct ArmaCoefficients {
  std::vector<double> ar;
  std::vector<double> ma;
};

std::vector<double> difference(std::span<const double> values);

// Smallest modulus among the roots of 1 - sum coeffs_j z^j. Infinity when the
// polynomial has no roots (all coefficients zero or empty).
double min_root_modulus(std::span<const double> coeffs);
double ar_min_root_modulus(std::span<const double> ar);
double ma_min_root_modulus(std::span<const double> ma);

// Innovation-form quantities from one pass of the Kalman filter over the ARMA
// state space model with unit innovation variance.
struct FilterSums {
  double weighted_ssq = 0.0;  // sum v_t^2 / F_t
  double sum_log_f = 0.0;     // sum log F_t
  std::size_t n = 0;
};

// Throws Error(kNumericalBreakdown) on a non-positive prediction variance.
// Stationarity is the caller's responsibility.
FilterSums kalman_filter(std::span<const double> z, std::span<const double> ar, std::span<const double> ma);

// Exact Gaussian log-likelihood of the zero-mean ARMA(p,q) process z with
// innovation variance sigma2. Throws Error(kNonStationaryParams) if the AR
// polynomial has a root on or inside the unit circle or the MA polynomial is
// not invertible, Error(kNumericalBreakdown) from the filter.
double kalman_loglik(std::span<const double> z, std::span<const double> ar, std::span<const double> ma,
                     double sigma2);

// Log-likelihood with sigma2 replaced by its maximizer weighted_ssq / n.
double concentrated_loglik(const FilterSums& sums);

// Maps p+q unconstrained reals to stationary AR and invertible MA
// coefficients: tanh to partial autocorrelations, then Durbin-Levinson.
ArmaCoefficients constrain(std::span<const double> raw, int p, int q);

// Right inverse of constrain for coefficients strictly inside the region.
std::vector<double> unconstrain(std::span<const double> ar, std::span<const double> ma);

struct FitOptions {
  std::uint64_t seed = 0;
  // Zero vector plus starts-1 seeded perturbations. Zero runs only the warm
  // starts (the zero vector is used if there are none).
  int starts = 5;
  double tolerance = 1e-8;
  int iterations_per_dim = 200;
  // Additional optimizer starting points, typically from nested_start.
  std::vector<std::vector<double>> warm_starts;
};

// Optimizer starting point for `order` that reproduces the nested fit
// exactly: a zero partial autocorrelation is appended for each extra lag.
// Both fits must share the same regression design.
std::vector<double> nested_start(const FitResult& nested, ArimaOrder order);

// Starting point built from another fit of the same series whose order is
// nested in `order` and whose design may differ: ARMA coordinates as in
// nested_start, regression coordinates truncated or zero-padded to
// `n_regressors`.
std::vector<double> transfer_start(const FitResult& from, ArimaOrder order, std::size_t n_regressors);

// Joint exact maximum likelihood over ARMA and regression coefficients with
// the innovation variance profiled out. `dz` is the differenced series.
FitResult fit(std::span<const double> dz, const RegressionDesign& design, ArimaOrder order,
              const FitOptions& options = {});

// Coefficient over its standard error from the inverse numerical Hessian of
// the negative log-likelihood at the optimum.
double t_ratio(const FitResult& fit, const std::string& coef_name);

}  // namespace growthtrend::arima
