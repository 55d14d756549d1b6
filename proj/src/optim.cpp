#include "growthtrend/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace growthtrend::optim {
namespace {

double sanitize(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  NelderMeadResult result;

  if (dim == 0) {
    result.value = sanitize(f(start));
    result.evaluations = 1;
    result.converged = std::isfinite(result.value);
    return result;
  }

  std::vector<std::vector<double>> simplex(dim + 1, start);
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  for (std::size_t i = 0; i <= dim; ++i) values[i] = sanitize(f(simplex[i]));
  result.evaluations = static_cast<int>(dim + 1);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    return sanitize(f(x));
  };
  auto along = [&](double t, std::vector<double>& out, std::size_t worst) {
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
  };

  int it = 0;
  for (;; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Stable sort keeps the vertex ordering deterministic under ties.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) && spread <= options.tolerance) {
      result.converged = true;
      break;
    }
    if (it >= options.max_iterations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    along(-1.0, trial, worst);
    const double f_reflect = eval(trial);

    if (f_reflect < values[best]) {
      along(-2.0, trial2, worst);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }

    // Outside contraction when the reflected point beats the worst vertex,
    // inside contraction otherwise.
    const bool outside = f_reflect < values[worst];
    along(outside ? -0.5 : 0.5, trial2, worst);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }

    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.iterations = it;
  return result;
}

}  // namespace growthtrend::optim
