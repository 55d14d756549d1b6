#include "growthtrend/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace growthtrend::selection {
namespace {

// Strict ordering used for step one: value, then p+q, then p.
bool better_order(double value, const arima::ArimaOrder& order, double best_value, const arima::ArimaOrder& best) {
  if (value != best_value) return value < best_value;
  if (order.p + order.q != best.p + best.q) return order.p + order.q < best.p + best.q;
  return order.p < best.p;
}

std::optional<double> criterion_value(const OrderFit& cell, Criterion c) {
  if (!cell.fit) return std::nullopt;
  if (!cell.scores) {
    // Only AICc can be undefined; AIC and BIC are always available.
    if (c == Criterion::kAicc) return std::nullopt;
    const auto& f = *cell.fit;
    const double k = f.k_params;
    if (c == Criterion::kAic) return 2.0 * k - 2.0 * f.loglik;
    return k * std::log(static_cast<double>(f.n_obs)) - 2.0 * f.loglik;
  }
  return cell.scores->get(c);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
}

std::string rate_label(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", rate);
  return buf;
}


// Score bookkeeping shared by the first pass and the refinement sweep.
void attach_scores(OrderFit& cell) {
  cell.scores.reset();
  try {
    cell.scores = score(*cell.fit);
  } catch (const Error&) {
    // AICc undefined; AIC/BIC are still derived from the fit.
  }
}

OrderFit& cell_at(RateFits& fits, int p, int q, int q_max) {
  return fits.cells[static_cast<std::size_t>(p * (q_max + 1) + q)];
}

// Neighbouring rates give near-identical likelihood surfaces, so an optimum
// found at one rate is a strong start at the next. One forward and one
// backward sweep refit cells from a better neighbour's optimum (and from any
// nested cell already improved in the sweep), keeping only gains. The sweep
// order is fixed, so results do not depend on threading.
void refine_across_rates(const dataio::CountrySeries& series, std::vector<RateFits>& grid_fits,
                         const SelectionConfig& config) {
  if (grid_fits.size() < 2) return;
  const auto dz = arima::difference(series.values);
  auto sweep = [&](std::size_t k, std::size_t from) {
    RateFits& here = grid_fits[k];
    RateFits& there = grid_fits[from];
    if (here.cells.empty() || there.cells.empty()) return;
    const auto design = make_design(series.size(), here.rate);
    std::vector<char> improved(here.cells.size(), 0);
    for (int p = 0; p <= config.p_max; ++p) {
      for (int q = 0; q <= config.q_max; ++q) {
        OrderFit& cell = cell_at(here, p, q, config.q_max);
        const OrderFit& source = cell_at(there, p, q, config.q_max);
        arima::FitOptions options = config.fit;
        options.starts = 0;
        // Likelihoods move smoothly with the rate; a neighbour doing better is
        // the sign of a basin missed here.
        if (source.fit && (!cell.fit || source.fit->loglik > cell.fit->loglik)) {
          options.warm_starts.push_back(arima::transfer_start(*source.fit, cell.order, design.size()));
        }
        const auto nested_improved = [&](int pp, int qq) -> const OrderFit* {
          const std::size_t i = static_cast<std::size_t>(pp * (config.q_max + 1) + qq);
          return improved[i] && here.cells[i].fit ? &here.cells[i] : nullptr;
        };
        if (p > 0) {
          if (const auto* n = nested_improved(p - 1, q)) options.warm_starts.push_back(arima::nested_start(*n->fit, cell.order));
        }
        if (q > 0) {
          if (const auto* n = nested_improved(p, q - 1)) options.warm_starts.push_back(arima::nested_start(*n->fit, cell.order));
        }
        if (options.warm_starts.empty()) continue;
        try {
          auto refit = arima::fit(dz, design, cell.order, options);
          if (!cell.fit || refit.loglik > cell.fit->loglik) {
            cell.fit = std::move(refit);
            cell.failure.clear();
            attach_scores(cell);
            improved[static_cast<std::size_t>(p * (config.q_max + 1) + q)] = 1;
          }
        } catch (const Error&) {
          // Keep whatever the first pass produced.
        }
      }
    }
  };
  for (std::size_t k = 1; k < grid_fits.size(); ++k) sweep(k, k - 1);
  for (std::size_t k = grid_fits.size() - 1; k-- > 0;) sweep(k, k + 1);
}

}  // namespace

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::kAic: return "aic";
    case Criterion::kAicc: return "aicc";
    case Criterion::kBic: return "bic";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(std::string_view name) noexcept {
  if (name == "aic" || name == "AIC") return Criterion::kAic;
  if (name == "aicc" || name == "AICc" || name == "AICC") return Criterion::kAicc;
  if (name == "bic" || name == "BIC") return Criterion::kBic;
  return std::nullopt;
}

double CriterionScores::get(Criterion c) const noexcept {
  switch (c) {
    case Criterion::kAic: return aic;
    case Criterion::kAicc: return aicc;
    case Criterion::kBic: return bic;
  }
  return aic;
}

CriterionScores score(double loglik, int k, int n) {
  if (n <= k + 1) {
    throw Error(Errc::kAiccUndefined, "AICc undefined for n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
  const double kd = k;
  CriterionScores s;
  s.aic = 2.0 * kd - 2.0 * loglik;
  s.aicc = s.aic + 2.0 * kd * (kd + 1.0) / static_cast<double>(n - k - 1);
  s.bic = kd * std::log(static_cast<double>(n)) - 2.0 * loglik;
  return s;
}

CriterionScores score(const arima::FitResult& fit) { return score(fit.loglik, fit.k_params, fit.n_obs); }

arima::RegressionDesign make_design(std::size_t n_levels, double rate) {
  if (n_levels < 2) throw Error(Errc::kTooShort, "series too short to difference");
  arima::RegressionDesign design(n_levels - 1);
  design.add(std::string(kDriftName), std::vector<double>(n_levels - 1, 1.0));
  if (rate > 0.0) design.add(std::string(kExpTrendName), growth::diff_exp_regressor(rate, n_levels));
  return design;
}

RateFits fit_rate(const dataio::CountrySeries& series, double rate, const SelectionConfig& config) {
  if (config.p_max < 0 || config.q_max < 0) throw Error(Errc::kInvalidArgument, "order bounds must be non-negative");
  const auto dz = arima::difference(series.values);
  const auto design = make_design(series.size(), rate);

  RateFits out;
  out.rate = rate;
  const auto cell_at = [&](int p, int q) -> const OrderFit& {
    return out.cells[static_cast<std::size_t>(p * (config.q_max + 1) + q)];
  };
  for (int p = 0; p <= config.p_max; ++p) {
    for (int q = 0; q <= config.q_max; ++q) {
      OrderFit cell;
      cell.order = {p, 1, q};
      // Starting from the nested (p-1,q) and (p,q-1) optima keeps the
      // maximized likelihood monotone in the order.
      arima::FitOptions options = config.fit;
      if (p > 0 && cell_at(p - 1, q).fit) options.warm_starts.push_back(arima::nested_start(*cell_at(p - 1, q).fit, cell.order));
      if (q > 0 && cell_at(p, q - 1).fit) options.warm_starts.push_back(arima::nested_start(*cell_at(p, q - 1).fit, cell.order));
      try {
        cell.fit = arima::fit(dz, design, cell.order, options);
        attach_scores(cell);
      } catch (const Error& e) {
        cell.failure = e.what();
      }
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

GridPointResult pick_order(const RateFits& fits, Criterion criterion) {
  const OrderFit* best = nullptr;
  double best_value = 0.0;
  for (const bool require_converged : {true, false}) {
    for (const auto& cell : fits.cells) {
      const auto value = criterion_value(cell, criterion);
      if (!value || !std::isfinite(*value)) continue;
      if (require_converged && !cell.fit->converged) continue;
      if (!best || better_order(*value, cell.order, best_value, best->order)) {
        best = &cell;
        best_value = *value;
      }
    }
    if (best) break;
  }
  if (!best) {
    throw Error(Errc::kAllFitsFailed, "no ARIMA order could be fitted at rate " + rate_label(fits.rate));
  }
  GridPointResult out;
  out.rate = fits.rate;
  out.best_order = best->order;
  out.fit = *best->fit;
  if (best->scores) {
    out.scores = *best->scores;
  } else {
    const double k = best->fit->k_params;
    out.scores.aic = 2.0 * k - 2.0 * best->fit->loglik;
    out.scores.bic = k * std::log(static_cast<double>(best->fit->n_obs)) - 2.0 * best->fit->loglik;
    out.scores.aicc = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

GridPointResult select_order(const dataio::CountrySeries& series, double rate, Criterion criterion,
                             const SelectionConfig& config) {
  return pick_order(fit_rate(series, rate, config), criterion);
}

std::vector<RateFits> fit_grid(const dataio::CountrySeries& series, const growth::GrowthGrid& grid,
                               const SelectionConfig& config) {
  dataio::validate(series);
  std::vector<RateFits> out(grid.size());
  std::vector<std::optional<Error>> errors(grid.size());
  parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    try {
      out[i] = fit_rate(series, grid.rates[i], config);
    } catch (const Error& e) {
      out[i].rate = grid.rates[i];
      errors[i] = e;
    }
  });
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  refine_across_rates(series, out, config);
  return out;
}

CriterionChoice choose_rate(const std::vector<RateFits>& grid_fits, Criterion criterion) {
  CriterionChoice out;
  bool any = false;
  double best_value = 0.0;
  for (const auto& fits : grid_fits) {
    GridPointResult point;
    try {
      point = pick_order(fits, criterion);
    } catch (const Error& e) {
      if (e.code() != Errc::kAllFitsFailed) throw;
      continue;
    }
    const double value = point.scores.get(criterion);
    if (!any || value < best_value) {
      any = true;
      best_value = value;
      out.chosen_rate = point.rate;
      out.chosen_order = point.best_order;
      out.fit = point.fit;
      out.scores = point.scores;
    }
    out.curve.push_back(std::move(point));
  }
  if (!any) throw Error(Errc::kAllFitsFailed, "no grid rate produced a fit");
  return out;
}

CriterionChoice select_growth(const dataio::CountrySeries& series, const growth::GrowthGrid& grid,
                              Criterion criterion, const SelectionConfig& config) {
  return choose_rate(fit_grid(series, grid, config), criterion);
}

CountrySelection select_country(const dataio::CountrySeries& series, dataio::SampleWindow window,
                                const growth::GrowthGrid& grid, const SelectionConfig& config) {
  const auto windowed = dataio::window(series, window);
  const auto grid_fits = fit_grid(windowed, grid, config);

  CountrySelection out;
  out.id = series.id;
  out.window = window;
  for (const auto c : kAllCriteria) {
    auto choice = choose_rate(grid_fits, c);
    const std::string tag(to_string(c));
    if (choice.fit.ar_root_min_modulus < kNearUnitRootModulus) out.warnings.push_back(tag + ":near_unit_root");
    if (choice.chosen_rate > 0.0 && choice.fit.coefficient(std::string(kExpTrendName)) < 0.0) {
      out.warnings.push_back(tag + ":negative_b0");
    }
    if (!choice.fit.converged) out.warnings.push_back(tag + ":not_converged");
    if (choice.curve.size() < grid_fits.size()) out.warnings.push_back(tag + ":grid_points_failed");
    out.per_criterion.emplace(c, std::move(choice));
  }
  return out;
}

std::vector<BatteryCell> run_battery(const std::vector<dataio::CountrySeries>& all_series,
                                     const growth::GrowthGrid& grid,
                                     const std::vector<dataio::SampleWindow>& windows, const SelectionConfig& config) {
  std::vector<BatteryCell> cells;
  for (const auto& series : all_series) {
    for (const auto& w : windows) {
      BatteryCell cell;
      cell.id = series.id;
      cell.window = w;
      try {
        cell.selection = select_country(series, w, grid, config);
      } catch (const Error& e) {
        cell.error = e.code();
        cell.message = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace growthtrend::selection
