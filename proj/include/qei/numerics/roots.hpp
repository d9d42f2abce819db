#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <sstream>
#include <utility>

#include "qei/error.hpp"
#include "qei/numerics/interval.hpp"

namespace qei::numerics {

namespace detail {

template <class F>
double checked_eval(const F& f, double x) {
  const double y = static_cast<double>(f(x));
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "function value is not finite at x = " << x;
    qei::detail::fail(ErrorKind::NonFinite, msg.str());
  }
  return y;
}

}  // namespace detail

/// Bracketed root of a continuous function.
///
/// The bracket is first narrowed by bisection until its width is below
/// 1e-3 (relative to the magnitude of the endpoints, floored at one), then
/// polished with Brent's method (inverse quadratic interpolation guarded
/// by bisection). The returned point always lies inside the input bracket
/// and within `tol` of a sign change of f.
template <class F>
  requires std::invocable<const F&, double>
double find_root(const F& f, const Interval& bracket, double tol) {
  qei::detail::require_domain(tol > 0.0 && std::isfinite(tol), "root tolerance must be positive");

  double a = bracket.lo();
  double b = bracket.hi();
  double fa = detail::checked_eval(f, a);
  double fb = detail::checked_eval(f, b);
  if (!(fa * fb < 0.0)) {
    std::ostringstream msg;
    msg << "f(lo) = " << fa << " and f(hi) = " << fb << " do not bracket a root on (" << a << ", "
        << b << ")";
    qei::detail::fail(ErrorKind::NoSignChange, msg.str());
  }

  const double coarse = 1e-3 * std::max({1.0, std::abs(a), std::abs(b)});
  while (b - a > coarse) {
    const double m = 0.5 * (a + b);
    const double fm = detail::checked_eval(f, m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }

  // Brent's zeroin on [a, b]; b is kept as the best estimate.
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  constexpr int kMaxIter = 200;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = detail::checked_eval(f, b);
  }
  qei::detail::fail(ErrorKind::NonConvergent, "Brent iteration budget exhausted");
}

}  // namespace qei::numerics
