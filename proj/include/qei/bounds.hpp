#pragma once

// Scenario-level energy-inequality bounds. All values are signed energy
// densities (units length^{-d}); Direction says which side they constrain.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <type_traits>
#include <variant>
#include <vector>

#include "qei/eigen.hpp"
#include "qei/error.hpp"
#include "qei/kernels.hpp"
#include "qei/numerics.hpp"

namespace qei::bounds {

inline constexpr double pi = std::numbers::pi;

struct MinkowskiInertial {
  int d = 4;
  double tau0 = 1.0;
};
struct MinkowskiNull {
  double tau0 = 1.0;
  double uk = 1.0;
};
struct UniformAccel {
  double alpha = 1.0;
  double tau0 = kInfinite;
};
struct Conformal2D {
  double S = 0.0;
  double tau0 = kInfinite;
};
struct LinearAccel2D {
  double p = 0.0;
};
struct Cylinder {
  double L = 1.0;
  double beta = kInfinite;
};
struct Torus {
  int j = 1;
  std::vector<double> lengths{1.0};
};
struct Misner {
  double a = 1.0;
  std::optional<double> t;
};
struct Rindler {
  double xi = 1.0;
  double zeta = 0.0;
};
struct StaticBall {
  int d = 4;
  double r = 1.0;
};

using Scenario = std::variant<MinkowskiInertial, MinkowskiNull, UniformAccel, Conformal2D,
                              LinearAccel2D, Cylinder, Torus, Misner, Rindler, StaticBall>;

inline std::string_view scenario_name(const Scenario& s) {
  constexpr std::string_view names[] = {"minkowski_inertial", "minkowski_null", "uniform_accel",
                                        "conformal_2d",       "linear_accel_2d", "cylinder",
                                        "torus",              "misner",          "rindler",
                                        "static_ball"};
  return names[s.index()];
}

enum class Direction { Lower, Upper };

inline std::string_view to_string(Direction d) { return d == Direction::Lower ? "lower" : "upper"; }

struct BoundResult {
  Scenario scenario;
  Direction direction;
  double value;
  std::string provenance;
};

namespace detail {

inline void positive(double x, const char* what) {
  if (!(x > 0.0) || std::isnan(x)) {
    std::ostringstream msg;
    msg << what << " must be positive, got " << x;
    qei::detail::fail(ErrorKind::DomainError, msg.str());
  }
}

inline void positive_finite(double x, const char* what) {
  positive(x, what);
  qei::detail::require_domain(std::isfinite(x), std::string(what) + " must be finite");
}

inline void finite(double x, const char* what) {
  qei::detail::require_domain(std::isfinite(x), std::string(what) + " must be finite");
}

inline void supported_dimension(int d) {
  if (d != 2 && d != 4) {
    std::ostringstream msg;
    msg << "optimal bounds are implemented for d = 2 and d = 4 only, got d = " << d;
    qei::detail::fail(ErrorKind::UnsupportedDimension, msg.str());
  }
}

}  // namespace detail

/// Checks the documented parameter invariants of a scenario.
inline void validate(const Scenario& s) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MinkowskiInertial>) {
          detail::supported_dimension(v.d);
          detail::positive(v.tau0, "tau0");
        } else if constexpr (std::is_same_v<T, MinkowskiNull>) {
          detail::positive(v.tau0, "tau0");
          detail::finite(v.uk, "u.k");
          qei::detail::require_domain(v.uk != 0.0, "u.k must be non-zero");
        } else if constexpr (std::is_same_v<T, UniformAccel>) {
          detail::positive_finite(v.alpha, "alpha");
          detail::positive(v.tau0, "tau0");
        } else if constexpr (std::is_same_v<T, Conformal2D>) {
          detail::finite(v.S, "S");
          detail::positive(v.tau0, "tau0");
        } else if constexpr (std::is_same_v<T, LinearAccel2D>) {
          detail::finite(v.p, "p");
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          detail::positive_finite(v.L, "L");
          detail::positive(v.beta, "beta");
        } else if constexpr (std::is_same_v<T, Torus>) {
          qei::detail::require_domain(v.j >= 1 && v.j <= 3, "torus needs j in {1, 2, 3}");
          qei::detail::require_domain(static_cast<int>(v.lengths.size()) == v.j,
                                      "torus needs exactly j lengths");
          for (std::size_t i = 0; i < v.lengths.size(); ++i) {
            detail::positive_finite(v.lengths[i], "torus length");
            if (i > 0) {
              qei::detail::require_domain(v.lengths[i - 1] <= v.lengths[i],
                                          "torus lengths must be sorted ascending");
            }
          }
        } else if constexpr (std::is_same_v<T, Misner>) {
          detail::positive_finite(v.a, "a");
          if (v.t) detail::positive_finite(*v.t, "t");
        } else if constexpr (std::is_same_v<T, Rindler>) {
          detail::positive_finite(v.xi, "xi");
          detail::finite(v.zeta, "zeta");
        } else if constexpr (std::is_same_v<T, StaticBall>) {
          detail::supported_dimension(v.d);
          detail::positive_finite(v.r, "r");
        }
      },
      s);
}

/// C_d = lambda_0(unit interval) K'_d: 3 pi/10 in d = 2, beta^4/(16 pi^2) in d = 4.
inline double inertial_constant(int d) {
  detail::supported_dimension(d);
  const kernels::Dimension dim(d);
  const double lambda0 = d == 2 ? eigen::dirichlet_min_eig(1.0) : std::pow(eigen::clamped_beam_beta(), 4);
  return lambda0 * kernels::k_prime_d(dim);
}

/// C'_4 = 4 C_4 / 3.
inline double null_constant() { return 4.0 * inertial_constant(4) / 3.0; }

inline BoundResult inertial_bound(int d, double tau0) {
  validate(MinkowskiInertial{d, tau0});
  const double value = is_infinite(tau0) ? 0.0 : -inertial_constant(d) / std::pow(tau0, d);
  return {MinkowskiInertial{d, tau0}, Direction::Lower, value, "inertial_optimal_weak_qei"};
}

inline BoundResult null_bound(double tau0, double uk) {
  validate(MinkowskiNull{tau0, uk});
  const double value = is_infinite(tau0) ? 0.0 : -null_constant() * uk * uk / std::pow(tau0, 4);
  return {MinkowskiNull{tau0, uk}, Direction::Lower, value, "inertial_null_contracted_qei"};
}

inline BoundResult accel_bound(double alpha, double tau0) {
  validate(UniformAccel{alpha, tau0});
  const double lambda0 = eigen::accel_lambda0(is_infinite(tau0) ? kInfinite : alpha * tau0);
  const double value = -(20.0 * lambda0 * lambda0 - 9.0) * std::pow(alpha, 4) / (320.0 * pi * pi);
  return {UniformAccel{alpha, tau0}, Direction::Lower, value, "uniform_acceleration_optimal_qei"};
}

/// -11 alpha^4 / (480 pi^2), which is -2 pi Q(0) for xi = 1/alpha; the
/// quadrature value is checked against the closed form.
inline BoundResult accel_awec_bound(double alpha) {
  validate(UniformAccel{alpha, kInfinite});
  const double closed = -11.0 * std::pow(alpha, 4) / (480.0 * pi * pi);
  const double quad = -2.0 * pi * kernels::accel_Q(0.0, kernels::AccelScale::from_alpha(alpha));
  if (!(std::abs(quad - closed) <= 1e-8 * std::abs(closed))) {
    std::ostringstream msg;
    msg << "kernel quadrature " << quad << " disagrees with closed form " << closed;
    qei::detail::fail(ErrorKind::NonConvergent, msg.str());
  }
  return {UniformAccel{alpha, kInfinite}, Direction::Lower, closed, "uniform_acceleration_awec"};
}

/// -(S + pi^2/tau0^2) / (6 pi), from the lowest eigenvalue of
/// -g'' + S g with Dirichlet ends.
inline BoundResult conformal2d_bound(double S, double tau0) {
  validate(Conformal2D{S, tau0});
  const double value = -eigen::conformal2d_min_eig(S, tau0) / (6.0 * pi);
  return {Conformal2D{S, tau0}, Direction::Lower, value, "conformal_2d_absolute_qei"};
}

inline BoundResult linear_accel_2d_bound(double p) {
  validate(LinearAccel2D{p});
  return {LinearAccel2D{p}, Direction::Lower, -eigen::harmonic_min_eig(p) / (6.0 * pi),
          "conformal_2d_linear_acceleration_qei"};
}

/// pi/(2L^2(1 - e^{-2 pi beta/L})) + pi e^{pi beta/L} / (2 L^2 sinh^3(pi beta/L)).
inline double cylinder_thermal_upper(double L, double beta) {
  detail::positive_finite(L, "L");
  detail::positive(beta, "beta");
  if (is_infinite(beta)) return pi / (2.0 * L * L);
  const double x = pi * beta / L;
  const double e = std::exp(-2.0 * x);
  const double one_minus = -std::expm1(-2.0 * x);
  // e^x / sinh^3 x = 8 e^{-2x} / (1 - e^{-2x})^3
  return pi / (2.0 * L * L * one_minus) + pi * 8.0 * e / (2.0 * L * L * one_minus * one_minus * one_minus);
}

inline std::pair<BoundResult, BoundResult> cylinder_band(double L, double beta) {
  validate(Cylinder{L, beta});
  BoundResult lower{Cylinder{L, beta}, Direction::Lower, -pi / (6.0 * L * L),
                    "cylinder_conformal_lower"};
  BoundResult upper{Cylinder{L, beta}, Direction::Upper, cylinder_thermal_upper(L, beta),
                    is_infinite(beta) ? "cylinder_ground_upper" : "cylinder_thermal_upper"};
  return {std::move(lower), std::move(upper)};
}

/// Length 2 tau_O tanh(a/2) of the largest diamond centred on Misner time
/// tau_O that embeds in Minkowski space.
inline double misner_max_diamond(double a, double tau_O) {
  detail::positive_finite(a, "a");
  detail::positive_finite(tau_O, "tau_O");
  return 2.0 * tau_O * std::tanh(0.5 * a);
}

/// Inertial bound transported onto the diamond, in the units of K(a):
/// -pi^2 C_4 (2 + coth(a/2))^4.
inline double misner_crude_K_bound(double a) {
  detail::positive_finite(a, "a");
  const double c = 2.0 + 1.0 / std::tanh(0.5 * a);
  return -pi * pi * inertial_constant(4) * c * c * c * c;
}

inline double misner_eigen_K_bound(double a) {
  detail::positive_finite(a, "a");
  return -eigen::misner_lambda(a);
}

inline BoundResult static_ball_bound(int d, double r) {
  validate(StaticBall{d, r});
  const double value = inertial_bound(d, 2.0 * r).value;
  return {StaticBall{d, r}, Direction::Lower, value, "static_ball_inertial_transport"};
}

inline BoundResult rindler_lower(double xi, double zeta = 0.0) {
  validate(Rindler{xi, zeta});
  const double value = -(11.0 - 60.0 * zeta) / (480.0 * pi * pi * std::pow(xi, 4));
  return {Rindler{xi, zeta}, Direction::Lower, value, "rindler_static_awec"};
}

namespace detail {

struct BeamProfileIntegrals {
  double i0;  // int g^2
  double i1;  // int g'^2
  double i2;  // int g''^2
};

// Clamped-beam ground mode on (-1/2, 1/2):
// g = cosh(beta x)/cosh(beta/2) - cos(beta x)/cos(beta/2).
inline const BeamProfileIntegrals& beam_profile_integrals() {
  static const BeamProfileIntegrals integrals = [] {
    const double b = eigen::clamped_beam_beta();
    const double ch = std::cosh(0.5 * b);
    const double co = std::cos(0.5 * b);
    auto g = [=](double x) { return std::cosh(b * x) / ch - std::cos(b * x) / co; };
    auto g1 = [=](double x) { return b * (std::sinh(b * x) / ch + std::sin(b * x) / co); };
    auto g2 = [=](double x) { return b * b * (std::cosh(b * x) / ch + std::cos(b * x) / co); };
    const numerics::Interval iv(-0.5, 0.5);
    return BeamProfileIntegrals{
        numerics::integrate([&](double x) { return g(x) * g(x); }, iv, 1e-13),
        numerics::integrate([&](double x) { return g1(x) * g1(x); }, iv, 1e-13),
        numerics::integrate([&](double x) { return g2(x) * g2(x); }, iv, 1e-13)};
  }();
  return integrals;
}

}  // namespace detail

/// Upper bound on the Rindler energy density from the clamped-beam profile
/// compressed by alpha_scale: (I2 + 2 alpha^2 xi^{-2} I1) / (16 pi^2 alpha^4 I0).
/// Tends to zero as alpha_scale grows.
inline double rindler_upper_scaled(double xi, double alpha_scale) {
  detail::positive_finite(xi, "xi");
  detail::positive_finite(alpha_scale, "alpha_scale");
  const auto& in = detail::beam_profile_integrals();
  const double a2 = alpha_scale * alpha_scale;
  return (in.i2 + 2.0 * a2 * in.i1 / (xi * xi)) / (16.0 * pi * pi * a2 * a2 * in.i0);
}

inline double misner_time(const Misner& m) { return m.t.value_or(1.0); }

/// Every bound the library provides for a scenario. Misner bounds are
/// densities at Misner time t (t = 1 when unset).
inline std::vector<BoundResult> bounds_for(const Scenario& scenario) {
  validate(scenario);
  return std::visit(
      [&](const auto& v) -> std::vector<BoundResult> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MinkowskiInertial>) {
          return {inertial_bound(v.d, v.tau0)};
        } else if constexpr (std::is_same_v<T, MinkowskiNull>) {
          return {null_bound(v.tau0, v.uk)};
        } else if constexpr (std::is_same_v<T, UniformAccel>) {
          std::vector<BoundResult> out{accel_bound(v.alpha, v.tau0)};
          if (is_infinite(v.tau0)) out.push_back(accel_awec_bound(v.alpha));
          return out;
        } else if constexpr (std::is_same_v<T, Conformal2D>) {
          return {conformal2d_bound(v.S, v.tau0)};
        } else if constexpr (std::is_same_v<T, LinearAccel2D>) {
          return {linear_accel_2d_bound(v.p)};
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          auto [lo, hi] = cylinder_band(v.L, v.beta);
          return {lo, hi};
        } else if constexpr (std::is_same_v<T, Torus>) {
          BoundResult b = inertial_bound(4, v.lengths.front());
          b.scenario = v;
          b.provenance = "torus_inertial_transport";
          return {b};
        } else if constexpr (std::is_same_v<T, Misner>) {
          const double t = misner_time(v);
          const double scale = 16.0 * pi * pi * std::pow(t, 4);
          return {BoundResult{v, Direction::Lower, misner_eigen_K_bound(v.a) / scale,
                              "misner_diamond_eigenvalue"},
                  BoundResult{v, Direction::Lower, misner_crude_K_bound(v.a) / scale,
                              "misner_diamond_inertial_transport"}};
        } else if constexpr (std::is_same_v<T, Rindler>) {
          return {rindler_lower(v.xi, v.zeta),
                  BoundResult{v, Direction::Upper, 0.0, "rindler_scaled_upper_limit"}};
        } else {
          return {static_ball_bound(v.d, v.r)};
        }
      },
      scenario);
}

}  // namespace qei::bounds
