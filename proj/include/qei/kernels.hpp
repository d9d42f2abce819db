#pragma once

// Minkowski-space kernel quantities behind the inertial, massive and
// uniformly accelerated bounds. Units: c = hbar = 1.

#include <cmath>
#include <concepts>
#include <numbers>
#include <sstream>

#include "qei/error.hpp"
#include "qei/numerics.hpp"

namespace qei::kernels {

inline constexpr double pi = std::numbers::pi;

/// Spacetime dimension d >= 2.
class Dimension {
 public:
  explicit Dimension(int d) : d_(d) {
    if (d < 2) {
      std::ostringstream msg;
      msg << "spacetime dimension must be at least 2, got " << d;
      qei::detail::fail(ErrorKind::DomainError, msg.str());
    }
  }
  int value() const noexcept { return d_; }
  bool operator==(const Dimension&) const = default;

 private:
  int d_;
};

/// Area of the unit k-sphere, 2 pi^{(k+1)/2} / Gamma((k+1)/2).
inline double sphere_area(int k) {
  qei::detail::require_domain(k >= 0, "sphere dimension must be non-negative");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(pi, h) / std::tgamma(h);
}

/// K_d = A_{d-2} / (2 d (2 pi)^{d-1}).
inline double k_d(Dimension d) {
  const int n = d.value();
  return sphere_area(n - 2) / (2.0 * n * std::pow(2.0 * pi, n - 1));
}

/// K'_d: equal to K_d for d >= 3, and 1.2 K_2 in two dimensions where the
/// mass profile can exceed one.
inline double k_prime_d(Dimension d) { return d.value() == 2 ? 1.2 * k_d(d) : k_d(d); }

/// Q_2(cosh alpha) = tanh alpha + alpha (1 - tanh^2 alpha).
inline double q2_profile_from_rapidity(double alpha) {
  qei::detail::require_domain(alpha >= 0.0 && std::isfinite(alpha), "rapidity must be finite and >= 0");
  const double t = std::tanh(alpha);
  return t + alpha * (1.0 - t * t);
}

/// Q_d(x) = (d / x^d) int_1^x y^2 (y^2 - 1)^{(d-3)/2} dy.
///
/// With y = cosh s the integrand becomes cosh^2 s sinh^{d-2} s, which is
/// smooth at the lower end even for d = 2.
inline double q_d_profile(double x, Dimension d, double rel_tol = 1e-12) {
  qei::detail::require_domain(std::isfinite(x) && x >= 1.0, "mass profile needs x >= 1");
  if (x == 1.0) return 0.0;
  const int n = d.value();
  const double top = std::acosh(x);
  const double integral = numerics::integrate(
      [n](double s) {
        const double c = std::cosh(s);
        return c * c * std::pow(std::sinh(s), n - 2);
      },
      numerics::Interval(0.0, top), rel_tol);
  return n * integral / std::pow(x, n);
}

struct Q2Maximum {
  double alpha0;
  double qmax;
};

/// Maximum of Q_2 over x >= 1, attained at x = cosh alpha0 where
/// alpha0 tanh alpha0 = 1; the maximum value equals alpha0.
inline Q2Maximum q2_max(double tol = 1e-14) {
  const double alpha0 = numerics::find_root([](double a) { return a * std::tanh(a) - 1.0; },
                                            numerics::Interval(0.5, 2.0), tol);
  return {alpha0, q2_profile_from_rapidity(alpha0)};
}

/// G_d(x) = (1/pi) int_x^inf y^d |ghat_0(y)|^2 dy for a rapidly decaying
/// squared Fourier magnitude.
template <class F>
  requires std::invocable<const F&, double>
double massive_tail_G(double x, const F& g0_hat_sq, Dimension d, double rel_tol = 1e-10) {
  qei::detail::require_domain(std::isfinite(x) && x >= 0.0, "tail start must be finite and >= 0");
  const int n = d.value();
  return numerics::integrate_to_infinity(
      [&](double y) { return std::pow(y, n) * static_cast<double>(g0_hat_sq(y)) / pi; }, x,
      rel_tol);
}

/// Inverse proper acceleration xi = 1/alpha of a uniformly accelerated
/// worldline.
class AccelScale {
 public:
  explicit AccelScale(double xi) : xi_(xi) {
    qei::detail::require_domain(std::isfinite(xi) && xi > 0.0,
                           "inverse acceleration must be positive and finite");
  }
  static AccelScale from_alpha(double alpha) {
    qei::detail::require_domain(std::isfinite(alpha) && alpha > 0.0,
                           "acceleration must be positive and finite");
    return AccelScale(1.0 / alpha);
  }
  double xi() const noexcept { return xi_; }
  double alpha() const noexcept { return 1.0 / xi_; }

 private:
  double xi_;
};

namespace detail {

// w / (1 - e^{-2 pi w}), stable for both signs and near zero.
inline double bose_factor(double w) {
  const double x = 2.0 * pi * w;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return (1.0 + x / 2.0 + x2 / 12.0 - x2 * x2 / 720.0) / (2.0 * pi);
  }
  if (x > 0.0) return w / -std::expm1(-x);
  return -w * std::exp(x) / -std::expm1(x);
}

// T-hat at xi = 1.
inline double that_unit(double w) { return (w * w + 1.0) * bose_factor(w) / (2.0 * pi); }

}  // namespace detail

/// T-hat(u) = (1 / (2 pi xi^4)) (xi^4 u^3 + xi^2 u) / (1 - e^{-2 pi xi u}).
/// Equals xi^{-3} T-hat(xi u; 1); the value at u = 0 is 1/(4 pi^2 xi^3).
inline double accel_That(double u, AccelScale scale) {
  qei::detail::require_domain(std::isfinite(u), "frequency must be finite");
  const double xi = scale.xi();
  return detail::that_unit(xi * u) / (xi * xi * xi);
}

/// Q(u) = (1 / (2 pi^2)) int_{-inf}^u T-hat(v) dv.
///
/// The lower tail (-inf, min(u, -1)] is reflected onto a half line and
/// marched until the exponential envelope is negligible; the remainder is
/// integrated adaptively.
inline double accel_Q(double u, AccelScale scale, double rel_tol = 1e-12) {
  qei::detail::require_domain(std::isfinite(u), "frequency must be finite");
  const double xi = scale.xi();
  const double w = xi * u;
  const double cut = std::min(w, -1.0);
  double integral = numerics::integrate_to_infinity(
      [](double s) { return detail::that_unit(-s); }, -cut, 0.1 * rel_tol);
  if (w > cut) {
    integral += numerics::integrate(detail::that_unit, numerics::Interval(cut, w), 0.1 * rel_tol);
  }
  return integral / (2.0 * pi * pi * std::pow(xi, 4));
}

/// Closed form Q(0) = 11 / (960 pi^3 xi^4).
inline double accel_Q0(AccelScale scale) {
  return 11.0 / (960.0 * pi * pi * pi * std::pow(scale.xi(), 4));
}

/// Polynomial majorant Q(u) <= (xi^4 u^4 + 2 xi^2 u^2 + 11/30) / (16 pi^3 xi^4), u >= 0.
inline double accel_Q_estimate(double u, AccelScale scale) {
  const double w = scale.xi() * u;
  return (w * w * w * w + 2.0 * w * w + 11.0 / 30.0) / (16.0 * pi * pi * pi * std::pow(scale.xi(), 4));
}

}  // namespace qei::kernels
