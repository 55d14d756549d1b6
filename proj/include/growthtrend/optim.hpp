#pragma once

#include <functional>
#include <span>
#include <vector>

namespace growthtrend::optim {

struct NelderMeadOptions {
  // Absolute spread of objective values across the simplex at which the
  // search stops.
  double tolerance = 1e-8;
  int max_iterations = 200;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Minimizes `f` from `start` with the standard Nelder-Mead simplex
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Non-finite
// objective values are treated as +infinity.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace growthtrend::optim
