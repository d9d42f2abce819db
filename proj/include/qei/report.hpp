#pragma once

// Exact values against their QEI bands, and the sweeps behind the
// eigenvalue, thermal band and Misner plots.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qei/bounds.hpp"
#include "qei/eigen.hpp"
#include "qei/error.hpp"
#include "qei/exact.hpp"

namespace qei::report {

using bounds::Scenario;

inline constexpr double kSatisfiedSlack = 1e-12;
inline constexpr double kSaturationTol = 1e-9;

struct ConsistencyReport {
  Scenario scenario;
  double exact;
  double lower;
  std::optional<double> upper;
  bool lower_satisfied;
  std::optional<bool> upper_satisfied;
  double margin_lower;  // exact - lower
  bool saturation;
};

namespace detail {

inline ConsistencyReport make_report(Scenario s, double exact, double lower, std::optional<double> upper) {
  ConsistencyReport r{std::move(s), exact, lower, upper, false, std::nullopt, exact - lower, false};
  r.lower_satisfied = exact >= lower - kSatisfiedSlack * std::abs(lower);
  if (upper) r.upper_satisfied = exact <= *upper + kSatisfiedSlack * std::abs(*upper);
  r.saturation = r.lower_satisfied && std::abs(exact - lower) <= kSaturationTol * std::abs(lower);
  return r;
}

}  // namespace detail

inline ConsistencyReport check(const Scenario& scenario) {
  bounds::validate(scenario);
  return std::visit(
      [&](const auto& v) -> ConsistencyReport {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bounds::Cylinder>) {
          const auto [lo, hi] = bounds::cylinder_band(v.L, v.beta);
          const double exact = exact::cylinder_thermal_density(v.L, v.beta).value;
          return detail::make_report(v, exact, lo.value, hi.value);
        } else if constexpr (std::is_same_v<T, bounds::Torus>) {
          const double lower = bounds::bounds_for(v).front().value;
          const double exact = exact::torus_stress(v.j, v.lengths).tensor.energy_density();
          return detail::make_report(v, exact, lower, std::nullopt);
        } else if constexpr (std::is_same_v<T, bounds::Misner>) {
          // The eigenvalue bound is the tighter of the two.
          const double lower = bounds::bounds_for(v).front().value;
          const double exact = exact::misner_density(v.a, bounds::misner_time(v)).tensor.energy_density();
          return detail::make_report(v, exact, lower, std::nullopt);
        } else if constexpr (std::is_same_v<T, bounds::Rindler>) {
          const auto b = bounds::bounds_for(v);
          return detail::make_report(v, exact::rindler_density(v.xi, v.zeta), b[0].value, b[1].value);
        } else {
          qei::detail::fail(ErrorKind::UnsupportedScenario,
                            std::string("no exact value for scenario ") +
                                std::string(bounds::scenario_name(scenario)));
        }
      },
      scenario);
}

struct FigureData {
  std::string id;         // accn_evals | thermal_band | misner
  std::string grid_name;
  std::vector<double> grid;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  const std::vector<double>& column(const std::string& name) const {
    for (const auto& [n, c] : columns) {
      if (n == name) return c;
    }
    qei::detail::fail(ErrorKind::DomainError, "no column named " + name);
  }
};

/// Runs f(i) for i in [0, n) on a small thread pool; results keep index
/// order. The error from the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  if (n > 1) g.back() = hi;
  return g;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  if (n > 1) g.back() = hi;
  return g;
}

inline std::vector<double> default_chi_grid() { return logspace(0.1, 100.0, 60); }
inline std::vector<double> default_betaL_grid() { return linspace(0.2, 5.0, 60); }
inline std::vector<double> default_a_grid() { return linspace(0.2, 5.0, 60); }

namespace detail {

inline void require_grid(const std::vector<double>& g, bool ascending) {
  qei::detail::require_domain(!g.empty(), "grid is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    qei::detail::require_domain(g[i] > 0.0 && std::isfinite(g[i]), "grid values must be positive and finite");
    if (ascending && i > 0) qei::detail::require_domain(g[i] > g[i - 1], "grid must be ascending");
  }
}

inline void require_finite(const FigureData& f) {
  for (const auto& [name, c] : f.columns) {
    for (double x : c) {
      if (!std::isfinite(x)) qei::detail::fail(ErrorKind::NonConvergent, "non-finite entry in column " + name);
    }
  }
}

}  // namespace detail

/// The k smallest accelerated eigenvalue branches over chi.
inline FigureData figure_accn_evals(const std::vector<double>& chi_grid = default_chi_grid(), int k = 3) {
  detail::require_grid(chi_grid, true);
  qei::detail::require_domain(k >= 1 && k <= 5, "branch count must be in 1..5");
  const auto rows = parallel_map(chi_grid.size(),
                                 [&](std::size_t i) { return eigen::accel_lambda_branches(chi_grid[i], k); });
  FigureData f{"accn_evals", "chi", chi_grid, {}};
  for (int j = 0; j < k; ++j) {
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(r[j]);
    f.columns.emplace_back("lambda_" + std::to_string(j), std::move(col));
  }
  detail::require_finite(f);
  return f;
}

/// Cylinder band at L = 1 over beta/L: lower, upper, exact.
inline FigureData figure_thermal_band(const std::vector<double>& betaL_grid = default_betaL_grid()) {
  detail::require_grid(betaL_grid, false);
  struct Row {
    double lower, upper, exact;
  };
  const auto rows = parallel_map(betaL_grid.size(), [&](std::size_t i) {
    const auto [lo, hi] = bounds::cylinder_band(1.0, betaL_grid[i]);
    return Row{lo.value, hi.value, exact::cylinder_thermal_density(1.0, betaL_grid[i]).value};
  });
  FigureData f{"thermal_band", "beta_over_L", betaL_grid, {{"lower", {}}, {"upper", {}}, {"exact", {}}}};
  for (const auto& r : rows) {
    f.columns[0].second.push_back(r.lower);
    f.columns[1].second.push_back(r.upper);
    f.columns[2].second.push_back(r.exact);
  }
  detail::require_finite(f);
  return f;
}

/// K(a) and the eigenvalue bound -lambda(a).
inline FigureData figure_misner(const std::vector<double>& a_grid = default_a_grid()) {
  detail::require_grid(a_grid, false);
  const auto rows = parallel_map(a_grid.size(), [&](std::size_t i) {
    return std::pair{exact::misner_K(a_grid[i]).value, bounds::misner_eigen_K_bound(a_grid[i])};
  });
  FigureData f{"misner", "a", a_grid, {{"K", {}}, {"minus_lambda", {}}}};
  for (const auto& [K, l] : rows) {
    f.columns[0].second.push_back(K);
    f.columns[1].second.push_back(l);
  }
  detail::require_finite(f);
  return f;
}

}  // namespace qei::report
