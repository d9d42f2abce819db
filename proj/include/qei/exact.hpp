#pragma once

// Exact renormalized energy densities and stress tensors for the catalog
// spacetimes: cylinder ground and thermal states, flat tori (image sums),
// the Misner vacuum and the Rindler vacuum.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qei/error.hpp"
#include "qei/kernels.hpp"
#include "qei/numerics.hpp"

namespace qei::exact {

inline constexpr double pi = std::numbers::pi;

/// Diagonal stress tensor T_ab in the named coordinate frame;
/// components[0] is the energy density.
struct StressTensorDiag {
  int d;
  std::vector<double> components;
  std::string frame;

  double energy_density() const { return components.front(); }
};

namespace detail {

inline void positive_finite(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << what << " must be positive and finite, got " << x;
    qei::detail::fail(ErrorKind::DomainError, msg.str());
  }
}

}  // namespace detail

inline double cylinder_ground_density(double L) {
  detail::positive_finite(L, "L");
  return -pi / (6.0 * L * L);
}

/// -pi/(6L^2) + (pi/L^2) sum_n csch^2(n pi beta / L). The tail bound is in
/// the units of the density.
inline numerics::SeriesResult cylinder_thermal_density(
    double L, double beta, double rel_tol = numerics::Tolerances{}.series_rel) {
  detail::positive_finite(L, "L");
  qei::detail::require_domain(beta > 0.0, "beta must be positive");
  const double ground = cylinder_ground_density(L);
  if (is_infinite(beta)) return {ground, 0, 0.0};
  const double c = pi * beta / L;
  const double scale = pi / (L * L);
  // The csch^2 series alone sets the stopping point; it is the only part
  // carrying truncation error.
  const auto series = numerics::sum_series(
      [c](std::int64_t n) {
        const double s = numerics::csch(static_cast<double>(n) * c);
        return s * s;
      },
      [c](std::int64_t n) { return numerics::csch_power_tail(c, 2, n); }, rel_tol);
  return {ground + scale * series.value, series.n_terms, scale * series.tail_bound};
}

/// Q(u) for an inertial worldline on the thermal cylinder:
///   (1/(pi L)) { sum_{omega_n < u} omega_n/(1 - e^{-beta omega_n})
///              + sum_{-omega_n < u} omega_n e^{-beta omega_n}/(1 - e^{-beta omega_n}) }
/// with omega_n = 2 pi n / L, n >= 1. Strict inequalities make it left
/// continuous.
inline double cylinder_Q_function(double u, double L, double beta,
                                  double rel_tol = 1e-13) {
  detail::positive_finite(L, "L");
  qei::detail::require_domain(beta > 0.0, "beta must be positive");
  qei::detail::require_domain(std::isfinite(u), "u must be finite");
  const double w1 = 2.0 * pi / L;
  const bool ground = is_infinite(beta);
  const double c = ground ? 0.0 : beta * w1;

  double positive = 0.0;
  if (u > 0.0) {
    auto n_max = static_cast<std::int64_t>(std::floor(u / w1));
    while (n_max > 0 && !(w1 * static_cast<double>(n_max) < u)) --n_max;
    while (w1 * static_cast<double>(n_max + 1) < u) ++n_max;
    positive = numerics::partial_sum(
        [&](std::int64_t n) {
          const double w = w1 * static_cast<double>(n);
          return ground ? w : w / -std::expm1(-c * static_cast<double>(n));
        },
        n_max);
  }

  double negative = 0.0;
  if (!ground) {
    // First n with omega_n > -u.
    std::int64_t n0 = 1;
    if (u < 0.0) {
      n0 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(-u / w1)));
      while (n0 > 1 && w1 * static_cast<double>(n0 - 1) > -u) --n0;
      while (!(w1 * static_cast<double>(n0) > -u)) ++n0;
    }
    const double x = std::exp(-c);
    const double denom = -std::expm1(-c);
    auto term = [&](std::int64_t k) {
      const double n = static_cast<double>(n0 + k - 1);
      return w1 * n * std::exp(-c * n) / -std::expm1(-c * n);
    };
    // sum_{n > m} n x^n = x^{m+1} ((m+1) - m x) / (1 - x)^2, dominating
    // the terms with 1/(1 - e^{-beta omega_n}) <= 1/(1 - e^{-c}).
    auto tail = [&](std::int64_t k) {
      const double m = static_cast<double>(n0 + k - 1);
      return w1 / denom * std::exp(-c * (m + 1)) * ((m + 1) - m * x) / (denom * denom);
    };
    if (std::exp(-c * static_cast<double>(n0)) > 0.0) {
      negative = numerics::sum_series(term, tail, rel_tol).value;
    }
  }
  return (positive + negative) / (pi * L);
}

/// Majorant e^{pi beta/L}/(4 L^2 sinh^3(pi beta/L)) + theta(u) u^2 / (2 pi^2 (1 - e^{-2 pi beta/L})).
inline double cylinder_Q_estimate(double u, double L, double beta) {
  detail::positive_finite(L, "L");
  qei::detail::require_domain(beta > 0.0, "beta must be positive");
  const double step = u > 0.0 ? u * u : 0.0;
  if (is_infinite(beta)) return step / (2.0 * pi * pi);
  const double x = pi * beta / L;
  const double e = std::exp(-2.0 * x);
  const double om = -std::expm1(-2.0 * x);
  return 8.0 * e / (4.0 * L * L * om * om * om) + step / (2.0 * pi * pi * om);
}

// Flat tori. A massless conformal scalar on R x T^j (j compact directions
// of periods L_1 <= ... <= L_j) has, by the image sum over the lattice
// d = (n_1 L_1, ..., n_j L_j),
//   T_tt = -(1/(2 pi^2)) sum' |d|^{-4}
//   T_ii = -(1/(2 pi^2)) sum' (-1 + 4 d_i^2/|d|^2) |d|^{-4}
// for each compact direction i, and T_ii = (1/(2 pi^2)) sum' |d|^{-4} for
// the non-compact ones. Components are reported in the frame (t, x, y, z)
// with z of period L_1, y of period L_2, x of period L_3.

struct TorusStress {
  StressTensorDiag tensor;
  double tail_bound;             // estimated truncation error in the energy density
  std::int64_t lattice_points;   // points summed explicitly
};

namespace detail {

// f_0 = |x|^{-4}, f_{1+i} = (-1 + 4 x_i^2/|x|^2) |x|^{-4}.
template <int J>
using Sums = std::array<double, J + 1>;

template <int J>
inline void accumulate(Sums<J>& acc, const std::array<double, J>& x) {
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double inv4 = 1.0 / (r2 * r2);
  acc[0] += inv4;
  for (int i = 0; i < J; ++i) acc[1 + i] += (-1.0 + 4.0 * x[i] * x[i] / r2) * inv4;
}

template <int J>
inline Sums<J> shell(int R, const std::array<double, J>& len) {
  Sums<J> acc{};
  if constexpr (J == 1) {
    for (int s : {-R, R}) accumulate<1>(acc, {s * len[0]});
  } else if constexpr (J == 2) {
    for (int s : {-R, R}) {
      for (int m = -R; m <= R; ++m) accumulate<2>(acc, {s * len[0], m * len[1]});
      for (int m = -R + 1; m <= R - 1; ++m) accumulate<2>(acc, {m * len[0], s * len[1]});
    }
  } else {
    for (int s : {-R, R}) {
      for (int m = -R; m <= R; ++m) {
        for (int k = -R; k <= R; ++k) accumulate<3>(acc, {s * len[0], m * len[1], k * len[2]});
      }
      for (int m = -R + 1; m <= R - 1; ++m) {
        for (int k = -R; k <= R; ++k) accumulate<3>(acc, {m * len[0], s * len[1], k * len[2]});
      }
      for (int m = -R + 1; m <= R - 1; ++m) {
        for (int k = -R + 1; k <= R - 1; ++k) accumulate<3>(acc, {m * len[0], k * len[1], s * len[2]});
      }
    }
  }
  return acc;
}

template <int J>
inline std::int64_t shell_size(int R) {
  if (R == 0) return 0;
  const std::int64_t a = 2 * R + 1, b = 2 * R - 1;
  if constexpr (J == 1) return 2;
  else if constexpr (J == 2) return a * a - b * b;
  else return a * a * a - b * b * b;
}

// (1/V) int over the outside of the box |x_i| <= H_i of f, for f
// homogeneous of degree -4: each face at distance H_k contributes the cone
// beyond it, (H_k / (4 - J)) int_face f dA.
template <int J>
inline Sums<J> outside_box_integral(const std::array<double, J>& H, double volume) {
  Sums<J> out{};
  const numerics::QuadratureOptions opts{.rel_tol = 1e-11, .abs_tol = 0.0, .max_panels = 4000};
  for (int k = 0; k < J; ++k) {
    for (int c = 0; c <= J; ++c) {
      auto f = [&](const std::array<double, J>& x) {
        Sums<J> s{};
        accumulate<J>(s, x);
        return s[c];
      };
      double face = 0.0;
      if constexpr (J == 1) {
        face = f({H[0]});
      } else if constexpr (J == 2) {
        const int m = 1 - k;
        face = 2.0 * numerics::integrate(
                         [&](double y) {
                           std::array<double, 2> x{};
                           x[k] = H[k];
                           x[m] = y;
                           return f(x);
                         },
                         numerics::Interval(0.0, H[m]), opts);
      } else {
        const int m1 = (k + 1) % 3, m2 = (k + 2) % 3;
        face = 4.0 * numerics::integrate(
                         [&](double y) {
                           return numerics::integrate(
                               [&](double z) {
                                 std::array<double, 3> x{};
                                 x[k] = H[k];
                                 x[m1] = y;
                                 x[m2] = z;
                                 return f(x);
                               },
                               numerics::Interval(0.0, H[m2]), opts);
                         },
                         numerics::Interval(0.0, H[m1]), opts);
      }
      // Two opposite faces.
      out[c] += 2.0 * H[k] * face / (4.0 - J);
    }
  }
  for (double& v : out) v /= volume;
  return out;
}

template <int J>
struct LatticeResult {
  Sums<J> sums;
  double change;
  std::int64_t points;
};

// Cubic shells up to R with the outside of the box (half widths (R+1/2) L_i)
// replaced by its integral; R doubles until two successive estimates agree
// to rel_tol.
template <int J>
inline LatticeResult<J> lattice_sums_cubic(const std::array<double, J>& len, double rel_tol,
                                           int max_radius) {
  double volume = 1.0;
  for (double l : len) volume *= l;
  Sums<J> partial{};
  std::int64_t points = 0;
  int R = 0;
  Sums<J> previous{};
  bool have_previous = false;
  for (int target = 4; target <= max_radius; target *= 2) {
    for (++R; R <= target; ++R) {
      const auto s = shell<J>(R, len);
      for (int c = 0; c <= J; ++c) partial[c] += s[c];
      points += shell_size<J>(R);
    }
    R = target;
    std::array<double, J> H{};
    for (int i = 0; i < J; ++i) H[i] = (R + 0.5) * len[i];
    const auto corr = outside_box_integral<J>(H, volume);
    Sums<J> estimate{};
    for (int c = 0; c <= J; ++c) estimate[c] = partial[c] + corr[c];
    if (have_previous) {
      double change = 0.0;
      for (int c = 0; c <= J; ++c) change = std::max(change, std::abs(estimate[c] - previous[c]));
      if (change < rel_tol * std::abs(estimate[0])) return {estimate, change, points};
    }
    previous = estimate;
    have_previous = true;
  }
  qei::detail::fail(ErrorKind::NonConvergent, "torus lattice sum did not converge");
}

// Points with |d| <= rho plus the integral over |x| > rho.
template <int J>
inline Sums<J> lattice_sums_spherical(const std::array<double, J>& len, double rho) {
  double volume = 1.0;
  for (double l : len) volume *= l;
  Sums<J> acc{};
  std::array<int, J> reach{};
  for (int i = 0; i < J; ++i) reach[i] = static_cast<int>(std::floor(rho / len[i]));
  const double rho2 = rho * rho;
  auto visit = [&](const std::array<double, J>& x) {
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    if (r2 > 0.0 && r2 <= rho2) accumulate<J>(acc, x);
  };
  if constexpr (J == 1) {
    for (int a = -reach[0]; a <= reach[0]; ++a) visit({a * len[0]});
  } else if constexpr (J == 2) {
    for (int a = -reach[0]; a <= reach[0]; ++a)
      for (int b = -reach[1]; b <= reach[1]; ++b) visit({a * len[0], b * len[1]});
  } else {
    for (int a = -reach[0]; a <= reach[0]; ++a)
      for (int b = -reach[1]; b <= reach[1]; ++b)
        for (int c = -reach[2]; c <= reach[2]; ++c) visit({a * len[0], b * len[1], c * len[2]});
  }
  const double radial = std::pow(rho, J - 4.0) / (4.0 - J) / volume;
  const double area = kernels::sphere_area(J - 1);
  acc[0] += area * radial;
  for (int i = 0; i < J; ++i) acc[1 + i] += area * (-1.0 + 4.0 / J) * radial;
  return acc;
}

template <int J>
inline StressTensorDiag torus_tensor(const Sums<J>& s) {
  const double k = 1.0 / (2.0 * pi * pi);
  // frame (t, x, y, z); compact direction i (period L_{i+1}) is z, y, x.
  std::vector<double> comp(4, k * s[0]);
  comp[0] = -k * s[0];
  for (int i = 0; i < J; ++i) comp[3 - i] = -k * s[1 + i];
  return {4, std::move(comp), "static (t, x, y, z); z, y, x have periods L1, L2, L3"};
}

inline void check_lengths(int j, const std::vector<double>& lengths) {
  qei::detail::require_domain(j >= 1 && j <= 3, "torus needs j in {1, 2, 3}");
  qei::detail::require_domain(static_cast<int>(lengths.size()) == j, "torus needs exactly j lengths");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    positive_finite(lengths[i], "torus length");
    if (i > 0) {
      qei::detail::require_domain(lengths[i - 1] <= lengths[i], "torus lengths must be sorted ascending");
    }
  }
}

}  // namespace detail

/// Vacuum stress tensor of R x T^j by cubic-shell lattice summation.
inline TorusStress torus_stress(int j, const std::vector<double>& lengths, double rel_tol = 1e-5) {
  detail::check_lengths(j, lengths);
  const double k = 1.0 / (2.0 * pi * pi);
  if (j == 1) {
    // One compact direction: 2 sum_n n^{-4}, with sum_{n>N} n^{-4} < 1/(3 N^3).
    const auto r = numerics::sum_series(
        [](std::int64_t n) { return 1.0 / std::pow(static_cast<double>(n), 4); },
        [](std::int64_t n) { return 1.0 / (3.0 * std::pow(static_cast<double>(n), 3)); }, 1e-13);
    const double s = 2.0 * r.value / std::pow(lengths[0], 4);
    const double tail = 2.0 * r.tail_bound / std::pow(lengths[0], 4);
    return {detail::torus_tensor<1>({s, 3.0 * s}), k * tail, 2 * r.n_terms};
  }
  if (j == 2) {
    const auto r = detail::lattice_sums_cubic<2>({lengths[0], lengths[1]}, rel_tol, 1 << 14);
    return {detail::torus_tensor<2>(r.sums), k * r.change, r.points};
  }
  const auto r = detail::lattice_sums_cubic<3>({lengths[0], lengths[1], lengths[2]}, rel_tol, 512);
  return {detail::torus_tensor<3>(r.sums), k * r.change, r.points};
}

/// Same tensor from spherical truncation at radius rho (in length units).
inline StressTensorDiag torus_stress_spherical(int j, const std::vector<double>& lengths, double rho) {
  detail::check_lengths(j, lengths);
  detail::positive_finite(rho, "truncation radius");
  if (j == 1) return detail::torus_tensor<1>(detail::lattice_sums_spherical<1>({lengths[0]}, rho));
  if (j == 2) {
    return detail::torus_tensor<2>(detail::lattice_sums_spherical<2>({lengths[0], lengths[1]}, rho));
  }
  return detail::torus_tensor<3>(
      detail::lattice_sums_spherical<3>({lengths[0], lengths[1], lengths[2]}, rho));
}

/// K_eps(a) = -sum_n [csch^4(n a/2) + 4 eps csch^2(n a/2)].
inline numerics::SeriesResult misner_K(double a, double epsilon_coupling = 0.0,
                                       double rel_tol = numerics::Tolerances{}.series_rel) {
  detail::positive_finite(a, "a");
  qei::detail::require_domain(std::isfinite(epsilon_coupling), "coupling must be finite");
  const double c = 0.5 * a;
  const double eps = epsilon_coupling;
  auto r = numerics::sum_series(
      [c, eps](std::int64_t n) {
        const double s = numerics::csch(static_cast<double>(n) * c);
        const double s2 = s * s;
        return s2 * s2 + 4.0 * eps * s2;
      },
      [c, eps](std::int64_t n) {
        return numerics::csch_power_tail(c, 4, n) + 4.0 * std::abs(eps) * numerics::csch_power_tail(c, 2, n);
      },
      rel_tol);
  r.value = -r.value;
  return r;
}

struct MisnerDensity {
  StressTensorDiag tensor;
  numerics::SeriesResult K;
};

/// K(a) / (16 pi^2 t^4) diag[1, 3 t^2, -1, -1] in Misner coordinates.
inline MisnerDensity misner_density(double a, double t, double epsilon_coupling = 0.0,
                                    double rel_tol = numerics::Tolerances{}.series_rel) {
  detail::positive_finite(a, "a");
  detail::positive_finite(t, "t");
  const auto K = misner_K(a, epsilon_coupling, rel_tol);
  const double rho = K.value / (16.0 * pi * pi * std::pow(t, 4));
  return {{4, {rho, 3.0 * t * t * rho, -rho, -rho}, "misner (t, chi, y, z)"}, K};
}

/// -(11 - 60 zeta) / (480 pi^2 xi^4).
inline double rindler_density(double xi, double zeta = 0.0) {
  detail::positive_finite(xi, "xi");
  qei::detail::require_domain(std::isfinite(zeta), "coupling must be finite");
  return -(11.0 - 60.0 * zeta) / (480.0 * pi * pi * std::pow(xi, 4));
}

}  // namespace qei::exact
