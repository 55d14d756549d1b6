#include "growthtrend/arima.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "growthtrend/error.hpp"
#include "growthtrend/optim.hpp"

namespace growthtrend::arima {

struct FitState {
  int p = 0;
  int q = 0;
  Eigen::MatrixXd q_basis;  // orthonormal basis of the design columns
  Eigen::MatrixXd r_inv;    // inverse of the triangular QR factor
  Eigen::VectorXd gamma;    // OLS coefficients in the orthonormal basis
  Eigen::VectorXd residual; // OLS residual
  double scale = 1.0;       // OLS residual standard deviation
  std::vector<double> optimum;
};

namespace {

// Partial autocorrelations are kept strictly inside (-1, 1) so that a
// saturated tanh never produces a unit root.
constexpr double kMaxPartial = 1.0 - 1e-10;

// Largest change in the predicted state covariance treated as converged.
constexpr double kSteadyTolerance = 1e-14;

void durbin_levinson(std::span<const double> partial, std::vector<double>& coeffs, std::vector<double>& prev) {
  coeffs.assign(partial.size(), 0.0);
  for (std::size_t k = 0; k < partial.size(); ++k) {
    prev.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(k));
    coeffs[k] = partial[k];
    for (std::size_t j = 0; j < k; ++j) coeffs[j] = prev[j] - partial[k] * prev[k - 1 - j];
  }
}

// constrain() without per-call allocation once the buffers have grown.
void constrain_into(std::span<const double> raw, int p, ArmaCoefficients& out, std::vector<double>& partial,
                    std::vector<double>& scratch) {
  partial.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    partial[i] = std::clamp(std::tanh(raw[i]), -kMaxPartial, kMaxPartial);
  }
  const std::span<const double> all(partial);
  const auto np = static_cast<std::size_t>(p);
  durbin_levinson(all.first(np), out.ar, scratch);
  durbin_levinson(all.subspan(np), out.ma, scratch);
  for (auto& c : out.ma) c = -c;
}

std::vector<double> step_down(std::span<const double> coeffs) {
  std::vector<double> a(coeffs.begin(), coeffs.end());
  std::vector<double> partial(a.size());
  for (std::size_t k = a.size(); k-- > 0;) {
    const double pk = a[k];
    if (!(std::abs(pk) < 1.0)) {
      throw Error(Errc::kNonStationaryParams, "coefficients lie outside the stationary region");
    }
    partial[k] = pk;
    const double denom = 1.0 - pk * pk;
    std::vector<double> next(k);
    for (std::size_t j = 0; j < k; ++j) next[j] = (a[j] + pk * a[k - 1 - j]) / denom;
    a = std::move(next);
  }
  return partial;
}

// Reusable buffers for the filter; sized to the state dimension.
struct FilterWorkspace {
  std::size_t r = 0;
  std::vector<double> phi, rvec, a, p, w, pc;
  Eigen::MatrixXd lyap;
  Eigen::VectorXd rhs, sol;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  void resize(std::size_t dim) {
    if (dim == r) return;
    r = dim;
    phi.assign(r, 0.0);
    rvec.assign(r, 0.0);
    a.assign(r, 0.0);
    p.assign(r * r, 0.0);
    w.assign(r * r, 0.0);
    pc.assign(r, 0.0);
    const auto packed = static_cast<Eigen::Index>(r * (r + 1) / 2);
    lyap.resize(packed, packed);
    rhs.resize(packed);
    lu = Eigen::PartialPivLU<Eigen::MatrixXd>(packed);
  }
};

// Unconditional state covariance P solving P = T P T' + R R' for the companion
// transition T (first column phi, identity superdiagonal). Only the upper
// triangle is unknown, using
//   (T P T')_ij = phi_i phi_j P_00 + phi_i P_0,j+1 + phi_j P_i+1,0 + P_i+1,j+1.
void initial_covariance(FilterWorkspace& ws) {
  const std::size_t r = ws.r;
  if (r == 1) {
    ws.p[0] = 1.0 / (1.0 - ws.phi[0] * ws.phi[0]);
    return;
  }
  auto index = [r](std::size_t i, std::size_t j) -> Eigen::Index {
    if (i > j) std::swap(i, j);
    // Row-major packed upper triangle.
    return static_cast<Eigen::Index>(i * r - i * (i - 1) / 2 + (j - i));
  };
  ws.lyap.setIdentity();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      const Eigen::Index row = index(i, j);
      ws.lyap(row, index(0, 0)) -= ws.phi[i] * ws.phi[j];
      if (j + 1 < r) ws.lyap(row, index(0, j + 1)) -= ws.phi[i];
      if (i + 1 < r) ws.lyap(row, index(i + 1, 0)) -= ws.phi[j];
      if (i + 1 < r && j + 1 < r) ws.lyap(row, index(i + 1, j + 1)) -= 1.0;
      ws.rhs(row) = ws.rvec[i] * ws.rvec[j];
    }
  }
  ws.lu.compute(ws.lyap);
  ws.sol = ws.lu.solve(ws.rhs);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) ws.p[i * r + j] = ws.sol(index(i, j));
  }
}

FilterSums run_filter(std::span<const double> z, std::span<const double> ar, std::span<const double> ma,
                      FilterWorkspace& ws) {
  const std::size_t r = std::max(ar.size(), ma.size() + 1);
  ws.resize(r);
  std::fill(ws.phi.begin(), ws.phi.end(), 0.0);
  std::fill(ws.rvec.begin(), ws.rvec.end(), 0.0);
  std::fill(ws.a.begin(), ws.a.end(), 0.0);
  std::copy(ar.begin(), ar.end(), ws.phi.begin());
  ws.rvec[0] = 1.0;
  std::copy(ma.begin(), ma.end(), ws.rvec.begin() + 1);

  initial_covariance(ws);

  FilterSums sums;
  sums.n = z.size();
  // Once the predicted covariance stops changing, F and the gain are fixed
  // and only the state mean needs updating.
  bool steady = false;
  double f = 0.0;
  double log_f = 0.0;
  for (const double obs : z) {
    const double v = obs - ws.a[0];
    if (!steady) {
      f = ws.p[0];
      if (!(f > 0.0) || !std::isfinite(f)) {
        throw Error(Errc::kNumericalBreakdown, "non-positive prediction variance in Kalman filter");
      }
      log_f = std::log(f);
      for (std::size_t i = 0; i < r; ++i) ws.pc[i] = ws.p[i * r];
    }
    sums.weighted_ssq += v * v / f;
    sums.sum_log_f += log_f;

    // Measurement update: a += P e1 v / F, then a = T a.
    for (std::size_t i = 0; i < r; ++i) ws.a[i] += ws.pc[i] * v / f;
    const double a0 = ws.a[0];
    for (std::size_t i = 0; i + 1 < r; ++i) ws.a[i] = ws.phi[i] * a0 + ws.a[i + 1];
    ws.a[r - 1] = ws.phi[r - 1] * a0;
    if (steady) continue;

    // P = T (P - P e1 e1' P / F) T' + R R', filled from the upper triangle of
    // the filtered covariance M via the companion identity above.
    const double* pc = ws.pc.data();
    const double* phi = ws.phi.data();
    const double* rv = ws.rvec.data();
    const double* pp = ws.p.data();
    double* next = ws.w.data();
    const double inv_f = 1.0 / f;
    auto filtered = [&](std::size_t k, std::size_t l) { return pp[k * r + l] - pc[k] * pc[l] * inv_f; };
    const double m00 = filtered(0, 0);
    double change = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const double m_i0 = i + 1 < r ? filtered(i + 1, 0) : 0.0;
      for (std::size_t j = i; j < r; ++j) {
        double value = phi[i] * phi[j] * m00 + phi[j] * m_i0 + rv[i] * rv[j];
        if (j + 1 < r) {
          value += phi[i] * filtered(0, j + 1);
          if (i + 1 < r) value += filtered(i + 1, j + 1);
        }
        change = std::max(change, std::abs(value - pp[i * r + j]));
        next[i * r + j] = value;
        next[j * r + i] = value;
      }
    }
    std::swap(ws.p, ws.w);
    steady = change <= kSteadyTolerance * std::max(1.0, std::abs(ws.p[0]));
  }
  return sums;
}

double companion_spectral_radius(std::span<const double> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg == 0) return 0.0;
  if (deg == 1) return std::abs(coeffs[0]);
  const auto n = static_cast<Eigen::Index>(deg);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = coeffs[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

std::string to_string(const ArimaOrder& order) {
  return "(" + std::to_string(order.p) + "," + std::to_string(order.d) + "," + std::to_string(order.q) + ")";
}

void RegressionDesign::add(std::string name, std::vector<double> column) {
  if (columns_.empty() && rows_ == 0) rows_ = column.size();
  if (column.size() != rows_) {
    throw Error(Errc::kInvalidArgument, "regressor '" + name + "' has " + std::to_string(column.size()) +
                                            " rows, design has " + std::to_string(rows_));
  }
  if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
    throw Error(Errc::kInvalidArgument, "duplicate regressor name '" + name + "'");
  }
  names_.push_back(std::move(name));
  columns_.push_back(std::move(column));
}

double FitResult::coefficient(const std::string& name) const {
  for (const auto& c : beta) {
    if (c.name == name) return c.value;
  }
  throw Error(Errc::kUnknownCoefficient, "no coefficient named '" + name + "'");
}

bool FitResult::has_coefficient(const std::string& name) const noexcept {
  return std::any_of(beta.begin(), beta.end(), [&](const Coefficient& c) { return c.name == name; });
}

std::vector<double> difference(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::kTooShort, "differencing needs at least 2 values");
  std::vector<double> out(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) out[i] = values[i + 1] - values[i];
  return out;
}

double min_root_modulus(std::span<const double> coeffs) {
  const double radius = companion_spectral_radius(coeffs);
  return radius == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / radius;
}

double ar_min_root_modulus(std::span<const double> ar) { return min_root_modulus(ar); }

double ma_min_root_modulus(std::span<const double> ma) {
  std::vector<double> negated(ma.begin(), ma.end());
  for (auto& c : negated) c = -c;
  return min_root_modulus(negated);
}

FilterSums kalman_filter(std::span<const double> z, std::span<const double> ar, std::span<const double> ma) {
  FilterWorkspace ws;
  return run_filter(z, ar, ma, ws);
}

double kalman_loglik(std::span<const double> z, std::span<const double> ar, std::span<const double> ma,
                     double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw Error(Errc::kInvalidArgument, "innovation variance must be positive");
  }
  if (!(ar_min_root_modulus(ar) > 1.0)) {
    throw Error(Errc::kNonStationaryParams, "AR polynomial has a root on or inside the unit circle");
  }
  if (!(ma_min_root_modulus(ma) > 1.0)) {
    throw Error(Errc::kNonStationaryParams, "MA polynomial has a root on or inside the unit circle");
  }
  const FilterSums s = kalman_filter(z, ar, ma);
  const double n = static_cast<double>(s.n);
  return -0.5 * (n * std::log(2.0 * std::numbers::pi * sigma2) + s.sum_log_f + s.weighted_ssq / sigma2);
}

double concentrated_loglik(const FilterSums& sums) {
  const double n = static_cast<double>(sums.n);
  const double sigma2 = sums.weighted_ssq / n;
  return -0.5 * (n * (std::log(2.0 * std::numbers::pi) + 1.0 + std::log(sigma2)) + sums.sum_log_f);
}

ArmaCoefficients constrain(std::span<const double> raw, int p, int q) {
  if (p < 0 || q < 0 || raw.size() != static_cast<std::size_t>(p + q)) {
    throw Error(Errc::kInvalidArgument, "constrain: raw vector must have p+q entries");
  }
  ArmaCoefficients out;
  std::vector<double> partial, scratch;
  constrain_into(raw, p, out, partial, scratch);
  return out;
}

std::vector<double> unconstrain(std::span<const double> ar, std::span<const double> ma) {
  std::vector<double> raw;
  raw.reserve(ar.size() + ma.size());
  for (const double pk : step_down(ar)) raw.push_back(std::atanh(pk));
  std::vector<double> negated(ma.begin(), ma.end());
  for (auto& c : negated) c = -c;
  for (const double pk : step_down(negated)) raw.push_back(std::atanh(pk));
  return raw;
}

FitResult fit(std::span<const double> dz, const RegressionDesign& design, ArimaOrder order, const FitOptions& options) {
  if (order.d != 1 || order.p < 0 || order.q < 0) {
    throw Error(Errc::kInvalidArgument, "order must be (p,1,q) with p,q >= 0");
  }
  const auto n = static_cast<Eigen::Index>(dz.size());
  const auto m = static_cast<Eigen::Index>(design.size());
  if (!design.empty() && design.rows() != dz.size()) {
    throw Error(Errc::kInvalidArgument, "design rows do not match the differenced series");
  }
  if (n < order.p + order.q + m + 2) {
    throw Error(Errc::kInsufficientData, "need at least " + std::to_string(order.p + order.q + m + 2) +
                                             " differenced observations for ARIMA" + to_string(order) +
                                             " with " + std::to_string(m) + " regressors");
  }

  auto state = std::make_shared<FitState>();
  state->p = order.p;
  state->q = order.q;
  const Eigen::Map<const Eigen::VectorXd> y(dz.data(), n);

  if (m > 0) {
    Eigen::MatrixXd x(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& col = design.column(static_cast<std::size_t>(j));
      for (Eigen::Index i = 0; i < n; ++i) x(i, j) = col[static_cast<std::size_t>(i)];
    }
    Eigen::MatrixXd normalized = x;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double norm = normalized.col(j).norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(Errc::kDegenerateDesign, "regressor '" + design.name(static_cast<std::size_t>(j)) + "' is zero");
      }
      normalized.col(j) /= norm;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_qr(normalized);
    rank_qr.setThreshold(1e-12);
    if (rank_qr.rank() < m) throw Error(Errc::kDegenerateDesign, "regressor columns are collinear");

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    state->q_basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    state->r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m, m));
    state->gamma = state->q_basis.transpose() * y;
    state->residual = y - state->q_basis * state->gamma;
  } else {
    state->residual = y;
  }
  const double ssr = state->residual.squaredNorm();
  const double dof = static_cast<double>(n - m);
  state->scale = std::sqrt(ssr / dof);
  // Residuals at rounding level count as an exact fit.
  const double rms = y.norm() / std::sqrt(static_cast<double>(n));
  if (!(state->scale > 1e-12 * rms) || !std::isfinite(state->scale)) {
    throw Error(Errc::kNumericalBreakdown, "regressors explain the differenced series exactly; innovation variance is zero");
  }

  const int n_arma = order.p + order.q;
  const std::size_t dim = static_cast<std::size_t>(n_arma + m);

  FilterWorkspace ws;
  std::vector<double> z(static_cast<std::size_t>(n));
  auto residual_for = [&](std::span<const double> x) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double v = state->residual(i);
      for (Eigen::Index j = 0; j < m; ++j) {
        v -= state->scale * state->q_basis(i, j) * x[static_cast<std::size_t>(n_arma + j)];
      }
      z[static_cast<std::size_t>(i)] = v;
    }
  };
  ArmaCoefficients coeffs;
  std::vector<double> partial, scratch;
  const optim::Objective objective = [&](std::span<const double> x) -> double {
    residual_for(x);
    constrain_into(x.first(static_cast<std::size_t>(n_arma)), order.p, coeffs, partial, scratch);
    try {
      return -concentrated_loglik(run_filter(z, coeffs.ar, coeffs.ma, ws));
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  optim::NelderMeadOptions nm;
  nm.tolerance = options.tolerance;
  nm.max_iterations = options.iterations_per_dim * static_cast<int>(std::max<std::size_t>(dim, 1));

  std::seed_seq seq{static_cast<std::uint32_t>(options.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(options.seed >> 32), static_cast<std::uint32_t>(order.p),
                    static_cast<std::uint32_t>(order.q), static_cast<std::uint32_t>(m)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> jitter(0.0, 0.5);

  optim::NelderMeadResult best;
  best.value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  int starts = dim == 0 ? 1 : std::max(0, options.starts);
  if (starts == 0 && options.warm_starts.empty()) starts = 1;
  std::vector<std::vector<double>> start_points;
  for (int s = 0; s < starts; ++s) {
    std::vector<double> start(dim, 0.0);
    if (s > 0) {
      for (auto& v : start) v = jitter(rng);
    }
    start_points.push_back(std::move(start));
  }
  if (dim > 0) {
    for (const auto& warm : options.warm_starts) {
      if (warm.size() != dim) throw Error(Errc::kInvalidArgument, "warm start has the wrong dimension");
      start_points.push_back(warm);
    }
  }
  for (std::size_t s = 0; s < start_points.size(); ++s) {
    auto res = optim::nelder_mead(objective, std::move(start_points[s]), nm);
    evaluations += res.evaluations;
    if (s == 0 || res.value < best.value) best = std::move(res);
  }
  if (!std::isfinite(best.value)) {
    throw Error(Errc::kNumericalBreakdown, "likelihood is not finite anywhere the optimizer searched");
  }

  FitResult out;
  out.order = order;
  coeffs = constrain(std::span<const double>(best.x).first(static_cast<std::size_t>(n_arma)), order.p, order.q);
  out.ar = coeffs.ar;
  out.ma = coeffs.ma;
  if (m > 0) {
    Eigen::VectorXd u(m);
    for (Eigen::Index j = 0; j < m; ++j) u(j) = best.x[static_cast<std::size_t>(n_arma + j)];
    const Eigen::VectorXd beta = state->r_inv * (state->gamma + state->scale * u);
    for (Eigen::Index j = 0; j < m; ++j) out.beta.push_back({design.name(static_cast<std::size_t>(j)), beta(j)});
  }
  residual_for(best.x);
  const FilterSums sums = run_filter(z, out.ar, out.ma, ws);
  out.sigma2 = sums.weighted_ssq / static_cast<double>(n);
  out.loglik = concentrated_loglik(sums);
  out.n_obs = static_cast<int>(n);
  out.k_params = order.p + order.q + static_cast<int>(m) + 1;
  out.converged = best.converged;
  out.ar_root_min_modulus = ar_min_root_modulus(out.ar);
  out.evaluations = evaluations;
  state->optimum = best.x;
  out.state = std::move(state);
  return out;
}

std::vector<double> transfer_start(const FitResult& from, ArimaOrder order, std::size_t n_regressors) {
  if (!from.state) throw Error(Errc::kInvalidArgument, "fit result carries no optimizer state");
  const FitState& st = *from.state;
  if (order.p < st.p || order.q < st.q) {
    throw Error(Errc::kInvalidArgument, "ARIMA" + to_string(order) + " does not nest ARIMA" + to_string(from.order));
  }
  const auto& x = st.optimum;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(order.p + order.q) + n_regressors);
  out.insert(out.end(), x.begin(), x.begin() + st.p);
  out.insert(out.end(), static_cast<std::size_t>(order.p - st.p), 0.0);
  out.insert(out.end(), x.begin() + st.p, x.begin() + st.p + st.q);
  out.insert(out.end(), static_cast<std::size_t>(order.q - st.q), 0.0);
  std::vector<double> u(x.begin() + st.p + st.q, x.end());
  u.resize(n_regressors, 0.0);
  out.insert(out.end(), u.begin(), u.end());
  return out;
}

std::vector<double> nested_start(const FitResult& nested, ArimaOrder order) {
  return transfer_start(nested, order, nested.beta.size());
}

double t_ratio(const FitResult& fit, const std::string& coef_name) {
  std::size_t index = fit.beta.size();
  for (std::size_t i = 0; i < fit.beta.size(); ++i) {
    if (fit.beta[i].name == coef_name) index = i;
  }
  if (index == fit.beta.size()) throw Error(Errc::kUnknownCoefficient, "no coefficient named '" + coef_name + "'");
  if (!fit.state) throw Error(Errc::kInvalidArgument, "fit result carries no optimizer state");

  const FitState& st = *fit.state;
  const int n_arma = st.p + st.q;
  const auto n = st.residual.size();
  const auto m = static_cast<Eigen::Index>(fit.beta.size());
  const auto dim = static_cast<Eigen::Index>(st.optimum.size());

  FilterWorkspace ws;
  std::vector<double> z(static_cast<std::size_t>(n));
  auto negloglik = [&](const std::vector<double>& x) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double v = st.residual(i);
      for (Eigen::Index j = 0; j < m; ++j) v -= st.scale * st.q_basis(i, j) * x[static_cast<std::size_t>(n_arma + j)];
      z[static_cast<std::size_t>(i)] = v;
    }
    const auto coeffs = constrain(std::span<const double>(x).first(static_cast<std::size_t>(n_arma)), st.p, st.q);
    return -concentrated_loglik(run_filter(z, coeffs.ar, coeffs.ma, ws));
  };

  std::vector<double> h(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) h[static_cast<std::size_t>(i)] = 1e-3 * std::max(1.0, std::abs(st.optimum[static_cast<std::size_t>(i)]));

  Eigen::MatrixXd hess(dim, dim);
  std::vector<double> x = st.optimum;
  const double f0 = negloglik(x);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (Eigen::Index j = i; j < dim; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      double value = 0.0;
      if (i == j) {
        x[ui] = st.optimum[ui] + h[ui];
        const double fp = negloglik(x);
        x[ui] = st.optimum[ui] - h[ui];
        const double fm = negloglik(x);
        x[ui] = st.optimum[ui];
        value = (fp - 2.0 * f0 + fm) / (h[ui] * h[ui]);
      } else {
        double corners[4];
        int c = 0;
        for (const double si : {1.0, -1.0}) {
          for (const double sj : {1.0, -1.0}) {
            x[ui] = st.optimum[ui] + si * h[ui];
            x[uj] = st.optimum[uj] + sj * h[uj];
            corners[c++] = negloglik(x);
          }
        }
        x[ui] = st.optimum[ui];
        x[uj] = st.optimum[uj];
        value = (corners[0] - corners[1] - corners[2] + corners[3]) / (4.0 * h[ui] * h[uj]);
      }
      hess(i, j) = value;
      hess(j, i) = value;
    }
  }

  const Eigen::LLT<Eigen::MatrixXd> llt(hess);
  if (llt.info() != Eigen::Success || !hess.allFinite()) {
    throw Error(Errc::kSingularHessian, "Hessian of the negative log-likelihood is not positive definite");
  }
  const Eigen::MatrixXd cov_x = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  const Eigen::MatrixXd cov_u = cov_x.bottomRightCorner(m, m);
  const Eigen::MatrixXd cov_beta = st.scale * st.scale * st.r_inv * cov_u * st.r_inv.transpose();
  const double var = cov_beta(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index));
  if (!(var > 0.0) || !std::isfinite(var)) {
    throw Error(Errc::kSingularHessian, "standard error of '" + coef_name + "' is not finite");
  }
  return fit.beta[index].value / std::sqrt(var);
}

}  // namespace growthtrend::arima
