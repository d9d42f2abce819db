#pragma once

// Lowest eigenvalues of the variational problems behind the optimal
// bounds, in closed or transcendental form, plus builders for the matching
// finite-difference oracle problems.

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qei/error.hpp"
#include "qei/numerics.hpp"

namespace qei::eigen {

inline constexpr double pi = std::numbers::pi;

using numerics::EigenProblem1D;
using numerics::Interval;

struct EigenSolution {
  double lambda;
  int branch;
  double residual;
};

/// pi^2 / tau0^2, the bottom of -d^2/dtau^2 with Dirichlet ends; zero for
/// an unbounded interval.
inline double dirichlet_min_eig(double tau0) {
  qei::detail::require_domain(tau0 > 0.0, "sampling duration must be positive");
  if (is_infinite(tau0)) return 0.0;
  return pi * pi / (tau0 * tau0);
}

/// Smallest positive root of tan(beta/2) = -tanh(beta/2); beta^4 is the
/// lowest clamped-beam eigenvalue on a unit interval.
inline double clamped_beam_beta() {
  static const double beta = numerics::find_root(
      [](double b) { return std::tan(0.5 * b) + std::tanh(0.5 * b); },
      Interval(pi + 0.01, 2.0 * pi - 0.01), 1e-15);
  return beta;
}

/// S + pi^2 / tau0^2: Dirichlet spectrum shifted by a constant potential.
inline double conformal2d_min_eig(double S, double tau0) {
  qei::detail::require_domain(std::isfinite(S), "potential must be finite");
  return S + dirichlet_min_eig(tau0);
}

/// Zero-point value |p| of -g'' + p^2 tau^2 g.
inline double harmonic_min_eig(double p) {
  qei::detail::require_domain(std::isfinite(p), "oscillator parameter must be finite");
  return std::abs(p);
}

// Uniformly accelerated worldline. With chi = tau0 / xi, the clamped
// problem g'''' - (2/xi^2) g'' + (11/(20 xi^4)) g = mu g has even
// eigenfunctions cosh(sqrt(lambda+1) tau/xi) + A cos(sqrt(lambda-1) tau/xi)
// with mu = (20 lambda^2 - 9) / (20 xi^4).

/// mu at xi = 1 for a given lambda.
inline double accel_mu(double lambda) { return (20.0 * lambda * lambda - 9.0) / 20.0; }

/// Inverse of accel_mu on lambda >= 0.
inline double accel_lambda_from_mu(double mu) {
  qei::detail::require_domain(20.0 * mu + 9.0 >= 0.0, "mu below the admissible range");
  return std::sqrt((20.0 * mu + 9.0) / 20.0);
}

namespace detail {

// The equation
//   sqrt(lambda+1) tanh(sqrt(lambda+1) chi/2) = -sqrt(lambda-1) tan(sqrt(lambda-1) chi/2)
// in the variable s = sqrt(lambda-1) chi/2, multiplied through by cos s so
// that it has no poles. Branch k has exactly one root with s in
// (pi/2 + k pi, pi + k pi).
inline double accel_lambda_of_s(double s, double chi) {
  const double r = 2.0 * s / chi;
  return 1.0 + r * r;
}

inline double accel_residual_s(double s, double chi) {
  const double lambda = accel_lambda_of_s(s, chi);
  const double c = std::sqrt(lambda + 1.0);
  return c * std::tanh(0.5 * c * chi) * std::cos(s) + (2.0 * s / chi) * std::sin(s);
}

inline EigenSolution accel_branch(double chi, int k) {
  const double lo = 0.5 * pi + k * pi;
  const double hi = pi + k * pi;
  auto f = [chi](double s) { return accel_residual_s(s, chi); };
  if (!(f(lo) * f(hi) < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change for branch " << k << " at chi = " << chi;
    qei::detail::fail(ErrorKind::BracketFailure, msg.str());
  }
  const double s = numerics::find_root(f, Interval(lo, hi), 1e-14 * hi);
  return {accel_lambda_of_s(s, chi), k, std::abs(f(s))};
}

inline void require_chi(double chi) {
  qei::detail::require_domain(chi > 0.0 && !std::isnan(chi),
                              "chi = tau0 / xi must be positive");
}

}  // namespace detail

/// Minimum solution lambda0 in (1, inf) of the accelerated eigenvalue
/// equation; exactly 1 for chi = inf.
inline EigenSolution accel_lambda0_solution(double chi) {
  detail::require_chi(chi);
  if (is_infinite(chi)) return {1.0, 0, 0.0};
  return detail::accel_branch(chi, 0);
}

inline double accel_lambda0(double chi) { return accel_lambda0_solution(chi).lambda; }

/// The k smallest solutions lambda > 1, increasing.
inline std::vector<double> accel_lambda_branches(double chi, int k) {
  detail::require_chi(chi);
  qei::detail::require_domain(std::isfinite(chi), "branches need a finite chi");
  qei::detail::require_domain(k >= 1 && k <= 5, "branch count must be in 1..5");
  std::vector<double> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) out.push_back(detail::accel_branch(chi, j).lambda);
  return out;
}

namespace detail {

struct AccelModeShape {
  double kc;  // sqrt(lambda+1)/xi
  double ks;  // sqrt(lambda-1)/xi
  double amp;
};

inline AccelModeShape accel_shape(double lambda, double tau0, double xi) {
  qei::detail::require_domain(lambda > 1.0 && std::isfinite(lambda), "lambda must exceed 1");
  qei::detail::require_domain(tau0 > 0.0 && std::isfinite(tau0), "tau0 must be positive and finite");
  qei::detail::require_domain(xi > 0.0 && std::isfinite(xi), "xi must be positive and finite");
  const double kc = std::sqrt(lambda + 1.0) / xi;
  const double ks = std::sqrt(lambda - 1.0) / xi;
  const double sn = std::sin(0.5 * ks * tau0);
  if (std::abs(sn) < 1e-14) {
    qei::detail::fail(ErrorKind::DomainError, "eigenfunction amplitude is singular at this lambda");
  }
  return {kc, ks, kc * std::sinh(0.5 * kc * tau0) / (ks * sn)};
}

}  // namespace detail

/// g(tau) = cosh(sqrt(lambda+1) tau/xi) + A cos(sqrt(lambda-1) tau/xi), with
/// A chosen so that g'(tau0/2) = 0.
inline double accel_eigenfunction(double tau, double lambda, double tau0, double xi) {
  const auto m = detail::accel_shape(lambda, tau0, xi);
  qei::detail::require_domain(std::abs(tau) <= 0.5 * tau0 * (1 + 1e-12), "tau outside the interval");
  return std::cosh(m.kc * tau) + m.amp * std::cos(m.ks * tau);
}

inline double accel_eigenfunction_derivative(double tau, double lambda, double tau0, double xi) {
  const auto m = detail::accel_shape(lambda, tau0, xi);
  qei::detail::require_domain(std::abs(tau) <= 0.5 * tau0 * (1 + 1e-12), "tau outside the interval");
  return m.kc * std::sinh(m.kc * tau) - m.amp * m.ks * std::sin(m.ks * tau);
}

// Oracle problems.

inline EigenProblem1D dirichlet_problem(double tau0) {
  return {numerics::Order::Second, numerics::constant(0.0), numerics::constant(1.0),
          numerics::constant(0.0), numerics::constant(1.0), Interval(-0.5 * tau0, 0.5 * tau0)};
}

inline EigenProblem1D clamped_beam_problem(double tau0) {
  return {numerics::Order::Fourth, numerics::constant(1.0), numerics::constant(0.0),
          numerics::constant(0.0), numerics::constant(1.0), Interval(-0.5 * tau0, 0.5 * tau0)};
}

/// g'''' - 2 g'' + (11/20) g = mu g on (-chi/2, chi/2), clamped (xi = 1).
inline EigenProblem1D accel_problem(double chi) {
  return {numerics::Order::Fourth, numerics::constant(1.0), numerics::constant(2.0),
          numerics::constant(11.0 / 20.0), numerics::constant(1.0),
          Interval(-0.5 * chi, 0.5 * chi)};
}

inline EigenProblem1D conformal2d_problem(double S, double tau0) {
  auto p = dirichlet_problem(tau0);
  p.v0 = numerics::constant(S);
  return p;
}

/// -g'' + p^2 tau^2 g on (-half_width, half_width) with Dirichlet ends,
/// standing in for the whole line.
inline EigenProblem1D harmonic_problem(double p, double half_width) {
  qei::detail::require_domain(p != 0.0, "oscillator oracle needs p != 0");
  auto prob = dirichlet_problem(2.0 * half_width);
  prob.v0 = [p](double t) { return p * p * t * t; };
  return prob;
}

/// int g''^2 = lambda int tau^{-4} g^2 on (tau_O - L/2, tau_O + L/2) with
/// L = 2 tau_O tanh(a/2), clamped.
inline EigenProblem1D misner_problem(double a, double tau_O = 1.0) {
  qei::detail::require_domain(a > 0.0 && std::isfinite(a), "closure scale must be positive");
  const double half = tau_O * std::tanh(0.5 * a);
  return {numerics::Order::Fourth, numerics::constant(1.0), numerics::constant(0.0),
          numerics::constant(0.0), [](double t) { return 1.0 / (t * t * t * t); },
          Interval(tau_O - half, tau_O + half)};
}

namespace detail {

// sin(a p/2) sinh(a q/2) - (sqrt(16 lambda - 9)/5)(cos(a p/2) cosh(a q/2) - 1)
// with p, q = sqrt(4 sqrt(lambda+1) -+ 5). Written without the quotient
// so the points where cos cosh = 1 are harmless. Scaled by e^{-a q/2}.
inline double misner_residual(double lambda, double a) {
  const double r = 4.0 * std::sqrt(lambda + 1.0);
  const double p = std::sqrt(std::max(r - 5.0, 0.0));
  const double q = std::sqrt(r + 5.0);
  const double x = 0.5 * a * p;
  const double y = 0.5 * a * q;
  const double e = std::exp(-2.0 * y);
  const double sh = 0.5 * (1.0 - e);  // sinh(y) e^{-y}
  const double ch = 0.5 * (1.0 + e);  // cosh(y) e^{-y}
  const double k = std::sqrt(std::max(16.0 * lambda - 9.0, 0.0)) / 5.0;
  return std::sin(x) * sh - k * (std::cos(x) * ch - std::exp(-y));
}

}  // namespace detail

/// Minimum lambda > 9/16 of the Misner transcendental condition (the
/// root at 9/16 itself is spurious). A finite-difference estimate of the
/// weighted quartic problem locates the root, which is then polished on
/// the transcendental residual.
inline EigenSolution misner_lambda_solution(double a, int oracle_grid = 400) {
  qei::detail::require_domain(a > 0.0 && std::isfinite(a), "closure scale must be positive");
  const double guess =
      numerics::fd_min_eigenvalue_extrapolated(misner_problem(a), oracle_grid).extrapolated;
  const double floor = 9.0 / 16.0;
  auto f = [a](double lambda) { return detail::misner_residual(lambda, a); };
  for (double delta = 1e-3; delta <= 0.5; delta *= 2.0) {
    const double lo = std::max(guess * (1.0 - delta), floor + 1e-9 * guess);
    const double hi = guess * (1.0 + delta);
    if (f(lo) * f(hi) < 0.0) {
      const double lambda = numerics::find_root(f, Interval(lo, hi), 1e-14 * guess);
      return {lambda, 0, std::abs(f(lambda))};
    }
  }
  std::ostringstream msg;
  msg << "no sign change of the Misner condition near " << guess << " at a = " << a;
  qei::detail::fail(ErrorKind::BracketFailure, msg.str());
}

inline double misner_lambda(double a) { return misner_lambda_solution(a).lambda; }

}  // namespace qei::eigen
