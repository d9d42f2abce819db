#include <gtest/gtest.h>

#include <cmath>

#include "qei/bounds.hpp"

namespace {

using namespace qei::bounds;
using qei::ErrorKind;
using qei::kInfinite;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const qei::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected qei::Error";
  return ErrorKind::UnsupportedScenario;
}

TEST(Inertial, Constants) {
  EXPECT_NEAR(inertial_constant(2), 3 * pi / 10, 1e-15);
  EXPECT_NEAR(inertial_constant(2), 0.942478, 1e-6);
  EXPECT_NEAR(inertial_constant(4), 3.169858, 1e-5);
  EXPECT_NEAR(null_constant(), 4.226477, 1e-5);
  EXPECT_NEAR(null_constant() / inertial_constant(4), 4.0 / 3.0, 1e-9);
}

TEST(Inertial, Values) {
  EXPECT_NEAR(inertial_bound(2, 1).value, -0.942478, 1e-6);
  EXPECT_NEAR(inertial_bound(4, 1).value, -3.169858, 1e-5);
  EXPECT_NEAR(inertial_bound(4, 2).value, -inertial_constant(4) / 16, 1e-15);
  EXPECT_EQ(inertial_bound(4, kInfinite).value, 0.0);
  EXPECT_EQ(inertial_bound(4, 1).direction, Direction::Lower);
}

TEST(Inertial, Errors) {
  EXPECT_EQ(kind_of([] { inertial_bound(3, 1); }), ErrorKind::UnsupportedDimension);
  EXPECT_EQ(kind_of([] { inertial_bound(4, -1); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { static_ball_bound(5, 1); }), ErrorKind::UnsupportedDimension);
}

TEST(Null, Values) {
  EXPECT_NEAR(null_bound(1, 1).value, -4.226477, 1e-5);
  EXPECT_NEAR(null_bound(1, 2).value, 4 * null_bound(1, 1).value, 1e-14);
  EXPECT_NEAR(null_bound(1, -2).value, null_bound(1, 2).value, 1e-14);
  EXPECT_EQ(kind_of([] { null_bound(0, 1); }), ErrorKind::DomainError);
}

TEST(Accel, InfiniteDuration) {
  EXPECT_NEAR(accel_bound(1, kInfinite).value, -11 / (320 * pi * pi), 1e-16);
  EXPECT_NEAR(accel_bound(1, kInfinite).value, -0.003483, 1e-6);
}

TEST(Accel, ShortTimesRecoverInertial) {
  const double tau0 = 0.05;
  EXPECT_NEAR(accel_bound(1, tau0).value / inertial_bound(4, tau0).value, 1.0, 0.02);
}

TEST(Accel, Scaling) {
  const double a = 0.7, t = 1.9, c = 2;
  EXPECT_NEAR(accel_bound(c * a, t / c).value, std::pow(c, 4) * accel_bound(a, t).value,
              1e-12 * std::abs(accel_bound(a, t).value) * 16);
}

TEST(Awec, Values) {
  EXPECT_NEAR(accel_awec_bound(1).value, -11 / (480 * pi * pi), 1e-17);
  EXPECT_NEAR(accel_awec_bound(1).value, -0.0023219437918035739, 1e-17);
  EXPECT_NEAR(accel_awec_bound(1).value, 2.0 / 3.0 * accel_bound(1, kInfinite).value, 1e-17);
  EXPECT_NEAR(accel_awec_bound(2).value, 16 * accel_awec_bound(1).value, 1e-16);
}

TEST(Saturation, Chain) {
  for (double alpha : {0.5, 1.0, 3.0}) {
    const double awec = accel_awec_bound(alpha).value;
    EXPECT_NEAR(accel_bound(alpha, kInfinite).value * 2 / 3, awec, 1e-10 * std::abs(awec));
    EXPECT_NEAR(rindler_lower(1 / alpha).value, awec, 1e-10 * std::abs(awec));
  }
}

TEST(Conformal2DBound, Values) {
  EXPECT_NEAR(conformal2d_bound(0, 1.3).value, -pi / (6 * 1.3 * 1.3), 1e-15);
  EXPECT_NEAR(conformal2d_bound(1, kInfinite).value, -1 / (6 * pi), 1e-16);
  // Tighter than the inertial d = 2 bound by (3 pi / 10) / (pi / 6) = 9/5.
  EXPECT_NEAR(inertial_bound(2, 1.3).value / conformal2d_bound(0, 1.3).value, 9.0 / 5.0, 1e-14);
}

TEST(LinearAccel2D, Values) {
  EXPECT_EQ(linear_accel_2d_bound(0).value, 0.0);
  EXPECT_NEAR(linear_accel_2d_bound(6 * pi).value, -1, 1e-15);
  EXPECT_NEAR(linear_accel_2d_bound(-6 * pi).value, -1, 1e-15);
}

TEST(CylinderBand, Ground) {
  auto [lo, hi] = cylinder_band(1, kInfinite);
  EXPECT_NEAR(lo.value, -pi / 6, 1e-15);
  EXPECT_NEAR(hi.value, pi / 2, 1e-15);
  EXPECT_EQ(lo.direction, Direction::Lower);
  EXPECT_EQ(hi.direction, Direction::Upper);
}

TEST(CylinderBand, Thermal) {
  // Direct evaluation of the formula at 30 digits.
  EXPECT_NEAR(cylinder_band(1, 1).second.value, 1.59733412686586, 1e-13);
  EXPECT_LT(cylinder_band(1, 10).second.value - pi / 2, 1e-4);
  EXPECT_GE(cylinder_band(1, 10).second.value, pi / 2);
  EXPECT_GT(cylinder_band(1, 3).second.value, pi / 2);
  double prev = kInfinite;
  for (int i = 0; i < 60; ++i) {
    const double b = 0.2 + 4.8 * i / 59;
    const auto [lo, hi] = cylinder_band(1, b);
    EXPECT_LE(lo.value, hi.value);
    EXPECT_LT(hi.value, prev);
    prev = hi.value;
  }
}

TEST(MisnerBounds, Diamond) {
  EXPECT_NEAR(misner_max_diamond(20, 1), 2, 1e-8);
  const double a = 1.3, L = misner_max_diamond(a, 1);
  EXPECT_NEAR((1 + L / 2) / (1 - L / 2), std::exp(a), 1e-13);
  EXPECT_NEAR(misner_max_diamond(2, 3), 6 * std::tanh(1.0), 1e-14);
  EXPECT_NEAR(misner_max_diamond(2, 3), 4.5695649357345893, 1e-14);
}

TEST(MisnerBounds, Crude) {
  const double asym = -pi * pi * inertial_constant(4) * 81;
  EXPECT_NEAR(asym, -2534, 1);
  EXPECT_NEAR(misner_crude_K_bound(40), asym, 1e-9);
  EXPECT_NEAR(misner_crude_K_bound(2), -pi * pi * inertial_constant(4) * std::pow(2 + 1 / std::tanh(1.0), 4), 1e-10);
  double prev = -kInfinite;
  for (int i = 0; i < 20; ++i) {
    const double v = misner_crude_K_bound(0.2 + 0.3 * i);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(MisnerBounds, EigenTighter) {
  for (int i = 0; i < 20; ++i) {
    const double a = 0.2 + 4.8 * i / 19;
    EXPECT_GT(misner_eigen_K_bound(a), misner_crude_K_bound(a)) << a;
  }
  EXPECT_NEAR(misner_eigen_K_bound(1), -531.8364590638099, 1e-6);
}

TEST(StaticBall, Values) {
  EXPECT_NEAR(static_ball_bound(4, 0.5).value, -inertial_constant(4), 1e-15);
  EXPECT_NEAR(static_ball_bound(4, 1).value, -inertial_constant(4) / 16, 1e-15);
  EXPECT_NEAR(static_ball_bound(2, 1).value, -3 * pi / 40, 1e-15);
}

TEST(Rindler, Lower) {
  EXPECT_NEAR(rindler_lower(1).value, -11 / (480 * pi * pi), 1e-17);
  EXPECT_EQ(rindler_lower(1, 11.0 / 60).value, 0.0);
  EXPECT_EQ(rindler_lower(2, 0).value, accel_awec_bound(0.5).value);
  EXPECT_EQ(kind_of([] { rindler_lower(0); }), ErrorKind::DomainError);
}

TEST(Rindler, ScaledUpper) {
  EXPECT_LT(rindler_upper_scaled(1, 10), rindler_upper_scaled(1, 1));
  for (double a : {1.0, 2.0, 7.5, 100.0}) {
    EXPECT_LE(rindler_upper_scaled(1, a), rindler_upper_scaled(1, 1) / (a * a) * (1 + 1e-14));
  }
  EXPECT_LT(rindler_upper_scaled(1, 1e4), 1e-6);
  EXPECT_GT(rindler_upper_scaled(1, 1e4), 0.0);
  // I2 / I0 = beta^4 for the beam mode.
  const double b4 = std::pow(qei::eigen::clamped_beam_beta(), 4);
  const double large_xi = rindler_upper_scaled(1e8, 1);
  EXPECT_NEAR(large_xi * 16 * pi * pi, b4, 1e-8 * b4);
}

TEST(Monotone, DurationParameters) {
  double pi_prev = -kInfinite, pn_prev = -kInfinite, pa_prev = -kInfinite, ps_prev = -kInfinite;
  for (int i = 0; i < 30; ++i) {
    const double t = 0.1 * std::pow(100.0, i / 29.0);
    const double vi = inertial_bound(4, t).value;
    const double vn = null_bound(t, 1).value;
    const double va = accel_bound(1, t).value;
    const double vs = static_ball_bound(4, t).value;
    EXPECT_GE(vi, pi_prev);
    EXPECT_GE(vn, pn_prev);
    EXPECT_GE(va, pa_prev);
    EXPECT_GE(vs, ps_prev);
    pi_prev = vi;
    pn_prev = vn;
    pa_prev = va;
    ps_prev = vs;
  }
}

TEST(Scenario, Validation) {
  EXPECT_EQ(kind_of([] { validate(Torus{2, {2.0, 1.0}}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { validate(Torus{3, {1.0, 1.0}}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { validate(Cylinder{0.0, 1.0}); }), ErrorKind::DomainError);
  EXPECT_NO_THROW(validate(Torus{3, {1.0, 1.0, 2.0}}));
  EXPECT_EQ(scenario_name(Scenario{Rindler{}}), "rindler");
}

TEST(Scenario, BoundsForAllPairsOrdered) {
  const std::vector<Scenario> all = {MinkowskiInertial{4, 1}, MinkowskiNull{1, 1},
                                     UniformAccel{1, kInfinite}, UniformAccel{1, 2},
                                     Conformal2D{0, 1},         LinearAccel2D{2},
                                     Cylinder{1, 1},            Cylinder{1, kInfinite},
                                     Torus{1, {1}},             Misner{2, 1.0},
                                     Rindler{1, 0},             StaticBall{4, 1}};
  for (const auto& s : all) {
    const auto results = bounds_for(s);
    ASSERT_FALSE(results.empty());
    double lo = -kInfinite, hi = kInfinite;
    for (const auto& r : results) {
      EXPECT_TRUE(std::isfinite(r.value));
      EXPECT_FALSE(r.provenance.empty());
      if (r.direction == Direction::Lower) {
        EXPECT_LE(r.value, 0.0);
        lo = std::max(lo, r.value);
      } else {
        hi = std::min(hi, r.value);
      }
    }
    EXPECT_LE(lo, hi) << scenario_name(s);
  }
}

}  // namespace
