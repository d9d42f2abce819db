#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "qei/error.hpp"
#include "qei/numerics/interval.hpp"

namespace qei::numerics {

inline constexpr double kMinRelTol = 1e-13;

struct QuadratureOptions {
  double rel_tol = 1e-9;
  /// Absolute floor on the error target; lets integrals that vanish
  /// identically terminate.
  double abs_tol = 0.0;
  int max_panels = 4000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]. Nodes are listed from
// the outside in; odd indices are shared with the Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
double eval_finite(const F& f, double x) {
  const double y = static_cast<double>(f(x));
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << x;
    qei::detail::fail(ErrorKind::NonFinite, msg.str());
  }
  return y;
}

template <class F>
Panel gauss_kronrod_15(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = eval_finite(f, center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  double abs_sum = std::abs(kronrod);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = eval_finite(f, center - dx);
    const double f2 = eval_finite(f, center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    abs_sum += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  // The raw |K - G| difference overestimates the error of the Kronrod
  // result by several orders on smooth integrands; use the QUADPACK
  // (200 |K - G|)^{3/2} scaling, bounded below by round-off.
  double err = std::abs(kronrod - gauss);
  if (err > 0.0) {
    const double scaled = 200.0 * err / std::max(abs_sum, std::numeric_limits<double>::min());
    err = abs_sum * std::min(1.0, std::pow(scaled, 1.5));
  }
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * abs_sum);
  return {lo, hi, kronrod, err, abs_sum};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature over a finite
/// interval. The panel with the largest error estimate is bisected until
/// the summed estimate drops below max(rel_tol |I|, abs_tol).
template <class F>
  requires std::invocable<const F&, double>
double integrate(const F& f, const Interval& interval, const QuadratureOptions& options) {
  qei::detail::require_domain(options.rel_tol > 0.0, "quadrature tolerance must be positive");

  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gauss_kronrod_15(f, interval.lo(), interval.hi()));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int count = 1;
  // Requests below the per-panel round-off floor are clamped to it.
  const double rel_tol = std::max(options.rel_tol, kMinRelTol);
  auto done = [&] { return total_err <= std::max(rel_tol * std::abs(total), options.abs_tol); };
  while (!done()) {
    if (count >= options.max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature on (" << interval.lo() << ", " << interval.hi()
          << ") did not converge: estimate " << total << " +/- " << total_err;
      qei::detail::fail(ErrorKind::NonConvergent, msg.str());
    }
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      qei::detail::fail(ErrorKind::NonConvergent, "quadrature panel width reached machine precision");
    }
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.lo, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Re-sum from the panels so the returned value does not carry the
  // drift of the running update.
  double sum = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    panels.pop();
  }
  return sum;
}

template <class F>
  requires std::invocable<const F&, double>
double integrate(const F& f, const Interval& interval, double rel_tol) {
  return integrate(f, interval, QuadratureOptions{.rel_tol = rel_tol});
}

/// Integral of f over [start, +inf).
///
/// The half line is cut into consecutive panels whose widths grow by a
/// factor 1.5 starting from `first_width`; each panel is integrated
/// adaptively. Marching stops once two consecutive panels each contribute
/// less than rel_tol times the running total, which is a valid truncation
/// only for integrands with an exponentially decaying envelope. Integrands
/// that decay algebraically exhaust the panel budget and raise
/// NonConvergent.
template <class F>
  requires std::invocable<const F&, double>
double integrate_to_infinity(const F& f, double start, double rel_tol, double first_width = 1.0,
                             int max_panels = 200) {
  qei::detail::require_domain(std::isfinite(start), "semi-infinite integral needs a finite start");
  qei::detail::require_domain(first_width > 0.0, "first panel width must be positive");

  const QuadratureOptions inner{.rel_tol = 0.1 * rel_tol, .abs_tol = 0.0, .max_panels = 4000};
  double total = 0.0;
  double lo = start;
  double width = first_width;
  int quiet = 0;
  for (int panel = 0; panel < max_panels; ++panel) {
    const double hi = lo + width;
    QuadratureOptions opts = inner;
    // A panel far in the tail only has to be accurate relative to the
    // total accumulated so far.
    opts.abs_tol = 0.1 * rel_tol * std::abs(total);
    const double piece = integrate(f, Interval(lo, hi), opts);
    total += piece;
    if (std::abs(piece) <= rel_tol * std::abs(total)) {
      if (++quiet == 2) return total;
    } else {
      quiet = 0;
    }
    lo = hi;
    width *= 1.5;
  }
  qei::detail::fail(ErrorKind::NonConvergent,
                    "semi-infinite integrand did not decay within the panel budget");
}

}  // namespace qei::numerics
