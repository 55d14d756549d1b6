#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "growthtrend/arima.hpp"
#include "growthtrend/error.hpp"
#include "support/oracle.hpp"

using namespace growthtrend;
using namespace growthtrend::arima;

namespace {

std::vector<double> simulate_arma(std::mt19937_64& rng, const std::vector<double>& ar, const std::vector<double>& ma,
                                  std::size_t n, double sd = 1.0) {
  std::normal_distribution<double> eps(0.0, sd);
  const std::size_t burn = 200;
  std::vector<double> e(n + burn), z(n + burn, 0.0);
  for (auto& v : e) v = eps(rng);
  for (std::size_t t = 0; t < z.size(); ++t) {
    double v = e[t];
    for (std::size_t i = 0; i < ar.size() && i < t; ++i) v += ar[i] * z[t - 1 - i];
    for (std::size_t j = 0; j < ma.size() && j < t; ++j) v += ma[j] * e[t - 1 - j];
    z[t] = v;
  }
  return {z.begin() + burn, z.end()};
}

RegressionDesign drift_design(std::size_t rows) {
  RegressionDesign d(rows);
  d.add("drift", std::vector<double>(rows, 1.0));
  return d;
}

Errc fit_error(std::span<const double> dz, const RegressionDesign& d, ArimaOrder o) {
  try {
    fit(dz, d, o);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("difference") {
  const std::vector<double> v{1.0, 4.0, 9.0, 16.0};
  CHECK(difference(v) == std::vector<double>{3.0, 5.0, 7.0});
  CHECK(difference(std::vector<double>{2.0, 2.0}) == std::vector<double>{0.0});
  CHECK_THROWS_AS(difference(std::vector<double>{1.0}), Error);
}

TEST_CASE("root moduli") {
  CHECK(ar_min_root_modulus(std::vector<double>{0.5}) == doctest::Approx(2.0));
  CHECK(std::isinf(ar_min_root_modulus(std::vector<double>{})));
  CHECK(std::isinf(ar_min_root_modulus(std::vector<double>{0.0, 0.0})));
  CHECK(ma_min_root_modulus(std::vector<double>{0.5}) == doctest::Approx(2.0));
  // 1 - 0.25 z^2 has roots +-2.
  CHECK(ar_min_root_modulus(std::vector<double>{0.0, 0.25}) == doctest::Approx(2.0));
  CHECK(ar_min_root_modulus(std::vector<double>{1.0}) == doctest::Approx(1.0));
}

TEST_CASE("white noise likelihood has a closed form") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> eps(0.0, 1.7);
  std::vector<double> z(40);
  for (auto& v : z) v = eps(rng);
  const double sigma2 = 2.2;
  const double ssq = std::inner_product(z.begin(), z.end(), z.begin(), 0.0);
  const double expected = -0.5 * (40.0 * std::log(2.0 * std::numbers::pi * sigma2) + ssq / sigma2);
  CHECK(kalman_loglik(z, {}, {}, sigma2) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("Kalman likelihood matches the dense Gaussian density") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> raw(0.0, 1.0);
  std::uniform_real_distribution<double> var(0.2, 5.0);
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) {
      for (const std::size_t n : {1u, 5u, 30u}) {
        for (int draw = 0; draw < 10; ++draw) {
          std::vector<double> x(static_cast<std::size_t>(p + q));
          for (auto& v : x) v = raw(rng);
          const auto c = constrain(x, p, q);
          const auto z = simulate_arma(rng, c.ar, c.ma, n);
          const double s2 = var(rng);
          const double kal = kalman_loglik(z, c.ar, c.ma, s2);
          const double dense = testing::dense_arma_loglik(z, c.ar, c.ma, s2);
          INFO("p=" << p << " q=" << q << " n=" << n);
          CHECK(std::abs(kal - dense) <= 1e-8 * std::max(1.0, std::abs(dense)));
        }
      }
    }
  }
}

TEST_CASE("oracle autocovariance of AR(1) and MA(1)") {
  const auto ar = testing::arma_autocovariance(std::vector<double>{0.5}, {}, 3);
  CHECK(ar[0] == doctest::Approx(1.0 / 0.75));
  CHECK(ar[2] == doctest::Approx(0.25 / 0.75));
  const auto ma = testing::arma_autocovariance({}, std::vector<double>{0.4}, 3);
  CHECK(ma[0] == doctest::Approx(1.16));
  CHECK(ma[1] == doctest::Approx(0.4));
  CHECK(ma[2] == doctest::Approx(0.0));
}

TEST_CASE("concentrated likelihood equals the likelihood at the profiled variance") {
  std::mt19937_64 rng(5);
  const std::vector<double> ar{0.4, -0.2}, ma{0.3};
  const auto z = simulate_arma(rng, ar, ma, 50);
  const auto sums = kalman_filter(z, ar, ma);
  const double s2 = sums.weighted_ssq / static_cast<double>(sums.n);
  CHECK(concentrated_loglik(sums) == doctest::Approx(kalman_loglik(z, ar, ma, s2)).epsilon(1e-12));
}

TEST_CASE("likelihood rejects non-stationary and non-invertible parameters") {
  const std::vector<double> z{0.1, -0.3, 0.2, 0.5};
  CHECK_THROWS_AS(kalman_loglik(z, std::vector<double>{1.0}, {}, 1.0), Error);
  CHECK_THROWS_AS(kalman_loglik(z, std::vector<double>{0.5, 0.6}, {}, 1.0), Error);
  CHECK_THROWS_AS(kalman_loglik(z, {}, std::vector<double>{-1.2}, 1.0), Error);
  try {
    kalman_loglik(z, std::vector<double>{1.5}, {}, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNonStationaryParams);
  }
  CHECK_THROWS_AS(kalman_loglik(z, {}, {}, 0.0), Error);
}

TEST_CASE("constrain lands strictly inside the stationary and invertible region") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> raw(0.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int p = trial % 4;
    const int q = (trial / 4) % 4;
    std::vector<double> x(static_cast<std::size_t>(p + q));
    for (auto& v : x) v = raw(rng);
    const auto c = constrain(x, p, q);
    REQUIRE(c.ar.size() == static_cast<std::size_t>(p));
    REQUIRE(c.ma.size() == static_cast<std::size_t>(q));
    CHECK(ar_min_root_modulus(c.ar) > 1.0);
    CHECK(ma_min_root_modulus(c.ma) > 1.0);
  }
  CHECK_THROWS_AS(constrain(std::vector<double>{0.1}, 1, 1), Error);
}

TEST_CASE("unconstrain inverts constrain") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> raw(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = trial % 4;
    const int q = (trial / 4) % 4;
    std::vector<double> x(static_cast<std::size_t>(p + q));
    for (auto& v : x) v = raw(rng);
    const auto c = constrain(x, p, q);
    const auto back = unconstrain(c.ar, c.ma);
    REQUIRE(back.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-8));
  }
  CHECK_THROWS_AS(unconstrain(std::vector<double>{1.2}, {}), Error);
}

TEST_CASE("drift of a random walk is the sample mean of the increments") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> eps(2.0, 1.0);
  std::vector<double> dz(200);
  for (auto& v : dz) v = eps(rng);
  const auto f = fit(dz, drift_design(dz.size()), {0, 1, 0});
  const double mean = std::accumulate(dz.begin(), dz.end(), 0.0) / 200.0;
  CHECK(f.coefficient("drift") == doctest::Approx(mean).epsilon(1e-6));
  CHECK(f.k_params == 2);
  CHECK(f.n_obs == 200);
  CHECK(f.converged);

  // Profile-likelihood standard error of a mean: sqrt(sigma2_ml / n).
  const double t_expected = mean / std::sqrt(f.sigma2 / 200.0);
  CHECK(t_ratio(f, "drift") == doctest::Approx(t_expected).epsilon(1e-4));
  CHECK_THROWS_AS(t_ratio(f, "b0"), Error);
  CHECK_THROWS_AS(f.coefficient("b0"), Error);
  CHECK(f.has_coefficient("drift"));
}

TEST_CASE("AR(1) coefficient is recovered") {
  std::mt19937_64 rng(29);
  const auto z = simulate_arma(rng, {0.6}, {}, 500);
  std::vector<double> dz(z);
  for (auto& v : dz) v += 1.5;
  const auto f = fit(dz, drift_design(dz.size()), {1, 1, 0});
  CHECK(f.ar[0] > 0.5);
  CHECK(f.ar[0] < 0.7);
  CHECK(f.coefficient("drift") == doctest::Approx(1.5).epsilon(0.2));
  CHECK(f.sigma2 == doctest::Approx(1.0).epsilon(0.15));
  CHECK(f.ar_root_min_modulus == doctest::Approx(1.0 / f.ar[0]));
}

TEST_CASE("ARMA(1,1) fit matches the oracle likelihood at its optimum") {
  std::mt19937_64 rng(31);
  const auto z = simulate_arma(rng, {0.5}, {0.4}, 120);
  const auto f = fit(z, {}, {1, 1, 1});
  CHECK(f.loglik == doctest::Approx(testing::dense_arma_loglik(z, f.ar, f.ma, f.sigma2)).epsilon(1e-10));
  // The optimum beats nearby parameter values.
  for (const double d : {-0.02, 0.02}) {
    const std::vector<double> ar{f.ar[0] + d};
    CHECK(testing::dense_arma_loglik(z, ar, f.ma, f.sigma2) < f.loglik);
  }
}

TEST_CASE("rescaling the data shifts the likelihood by -n log c") {
  std::mt19937_64 rng(37);
  const auto z = simulate_arma(rng, {0.3}, {0.2}, 60);
  std::vector<double> dz(z);
  for (auto& v : dz) v += 0.8;
  const auto base = fit(dz, drift_design(dz.size()), {1, 1, 1});
  for (const double c : {1e-3, 1e3}) {
    std::vector<double> scaled(dz);
    for (auto& v : scaled) v *= c;
    const auto s = fit(scaled, drift_design(dz.size()), {1, 1, 1});
    CHECK(s.loglik == doctest::Approx(base.loglik - 60.0 * std::log(c)).epsilon(1e-9));
    CHECK(s.ar[0] == doctest::Approx(base.ar[0]).epsilon(1e-9));
    CHECK(s.coefficient("drift") == doctest::Approx(c * base.coefficient("drift")).epsilon(1e-9));
  }
}

TEST_CASE("warm starts make the likelihood monotone in the order") {
  std::mt19937_64 rng(41);
  const auto z = simulate_arma(rng, {0.5, -0.3}, {0.4}, 54);
  const auto d = drift_design(z.size());
  const auto small = fit(z, d, {1, 1, 0});
  FitOptions opts;
  opts.warm_starts.push_back(nested_start(small, {2, 1, 1}));
  const auto big = fit(z, d, {2, 1, 1}, opts);
  CHECK(big.loglik >= small.loglik - 1e-9);

  const auto start = nested_start(small, {2, 1, 1});
  CHECK(start.size() == 4);
  CHECK(start[1] == 0.0);
  CHECK(start[2] == 0.0);
  CHECK_THROWS_AS(nested_start(big, {1, 1, 0}), Error);
  CHECK(transfer_start(small, {1, 1, 0}, 2).size() == 3);
  CHECK(transfer_start(small, {1, 1, 0}, 0).size() == 1);
}

TEST_CASE("fits are deterministic for a given seed") {
  std::mt19937_64 rng(43);
  const auto z = simulate_arma(rng, {0.2}, {0.5, 0.2}, 54);
  FitOptions opts;
  opts.seed = 99;
  const auto a = fit(z, drift_design(z.size()), {1, 1, 2}, opts);
  const auto b = fit(z, drift_design(z.size()), {1, 1, 2}, opts);
  CHECK(a.loglik == b.loglik);
  CHECK(a.ar == b.ar);
  CHECK(a.ma == b.ma);
  CHECK(a.beta == b.beta);
}

TEST_CASE("fit errors") {
  std::vector<double> short_dz{1.0, 2.0, 1.5};
  CHECK(fit_error(short_dz, drift_design(3), {1, 1, 1}) == Errc::kInsufficientData);

  std::mt19937_64 rng(47);
  const auto z = simulate_arma(rng, {}, {}, 30);
  RegressionDesign zero(30);
  zero.add("zero", std::vector<double>(30, 0.0));
  CHECK(fit_error(z, zero, {0, 1, 0}) == Errc::kDegenerateDesign);

  RegressionDesign twins(30);
  twins.add("a", std::vector<double>(30, 1.0));
  twins.add("b", std::vector<double>(30, 2.0));
  CHECK(fit_error(z, twins, {0, 1, 0}) == Errc::kDegenerateDesign);

  const std::vector<double> constant(30, 4.0);
  CHECK(fit_error(constant, drift_design(30), {0, 1, 0}) == Errc::kNumericalBreakdown);
  CHECK(fit_error(z, drift_design(29), {0, 1, 0}) == Errc::kInvalidArgument);
  CHECK(fit_error(z, drift_design(30), {0, 2, 0}) == Errc::kInvalidArgument);

  RegressionDesign d(3);
  CHECK_THROWS_AS(d.add("x", {1.0, 2.0}), Error);
  d.add("x", {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(d.add("x", {1.0, 2.0, 3.0}), Error);
}

TEST_CASE("order label") { CHECK(to_string(ArimaOrder{1, 1, 3}) == "(1,1,3)"); }
