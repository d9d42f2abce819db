#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qei/kernels.hpp"

namespace {

using namespace qei::kernels;
using qei::ErrorKind;

TEST(SphereArea, LowDimensions) {
  EXPECT_DOUBLE_EQ(sphere_area(0), 2.0);
  EXPECT_NEAR(sphere_area(1), 2 * pi, 1e-14);
  EXPECT_NEAR(sphere_area(2), 4 * pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 2 * pi * pi, 1e-13);
}

TEST(Dimension, RejectsBelowTwo) {
  EXPECT_THROW(Dimension(1), qei::Error);
  EXPECT_NO_THROW(Dimension(2));
}

TEST(KernelConstants, KdValues) {
  EXPECT_NEAR(k_d(Dimension(2)), 1 / (4 * pi), 1e-15);
  EXPECT_NEAR(k_d(Dimension(2)), 0.0795775, 1e-7);
  EXPECT_NEAR(k_d(Dimension(4)), 1 / (16 * pi * pi), 1e-16);
  EXPECT_NEAR(k_d(Dimension(4)), 0.00633257, 1e-8);
  EXPECT_NEAR(k_d(Dimension(3)), 1 / (12 * pi), 1e-15);
}

TEST(KernelConstants, KPrime) {
  EXPECT_NEAR(k_prime_d(Dimension(2)), 3 / (10 * pi), 1e-15);
  EXPECT_EQ(k_prime_d(Dimension(4)), k_d(Dimension(4)));
  EXPECT_EQ(k_prime_d(Dimension(5)), k_d(Dimension(5)));
}

TEST(MassProfile, EmptyRange) {
  for (int d = 2; d <= 6; ++d) EXPECT_EQ(q_d_profile(1.0, Dimension(d)), 0.0);
}

TEST(MassProfile, TwoDimensionalClosedFormAgrees) {
  for (double alpha : {0.1, 0.7, 1.199679, 2.5, 4.0}) {
    EXPECT_NEAR(q_d_profile(std::cosh(alpha), Dimension(2)), q2_profile_from_rapidity(alpha), 1e-12);
  }
  EXPECT_NEAR(q_d_profile(std::cosh(1.199679), Dimension(2)), 1.199679, 1e-6);
}

TEST(MassProfile, FourDimensionsAtTwo) {
  // Oracle from the antiderivative of y^2 sqrt(y^2 - 1): 2.8664691761299332 / 4.
  EXPECT_NEAR(q_d_profile(2.0, Dimension(4)), 0.71661729403248330, 1e-12);
}

TEST(MassProfile, RangeOfValues) {
  for (int i = 0; i <= 60; ++i) {
    const double x = 1.0 + 49.0 * i / 60.0;
    for (int d : {3, 4, 5}) {
      const double q = q_d_profile(x, Dimension(d));
      EXPECT_GE(q, 0.0);
      EXPECT_LE(q, 1.0);
    }
    EXPECT_LT(q_d_profile(x, Dimension(2)), 1.2);
  }
}

TEST(MassProfile, DomainError) {
  try {
    q_d_profile(0.5, Dimension(4));
    FAIL();
  } catch (const qei::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
}

TEST(Q2Max, Maximizer) {
  const auto m = q2_max();
  EXPECT_NEAR(m.alpha0, 1.199679, 1e-6);
  EXPECT_NEAR(m.alpha0 * std::tanh(m.alpha0) - 1.0, 0.0, 1e-10);
  EXPECT_NEAR(m.qmax, m.alpha0, 1e-12);
  EXPECT_NEAR(q_d_profile(std::cosh(m.alpha0), Dimension(2)), m.alpha0, 1e-8);
  EXPECT_LT(m.qmax, 1.2);
}

TEST(MassiveTail, ZeroProfile) {
  EXPECT_EQ(massive_tail_G(0.0, [](double) { return 0.0; }, Dimension(4)), 0.0);
}

TEST(MassiveTail, GaussianMoment) {
  auto g = [](double y) { return std::exp(-y * y); };
  const double g0 = massive_tail_G(0.0, g, Dimension(4));
  EXPECT_NEAR(g0, 3 * std::sqrt(pi) / (8 * pi), 1e-9);
  EXPECT_NEAR(g0, 0.2115711, 1e-7);
  const double g1 = massive_tail_G(1.0, g, Dimension(4));
  const double g2 = massive_tail_G(2.0, g, Dimension(4));
  EXPECT_GE(g0, g1);
  EXPECT_GE(g1, g2);
  EXPECT_GT(g2, 0.0);
}

TEST(AccelThat, Positive) {
  const AccelScale s(1.0);
  for (double u : {-5.0, -1.0, 0.0, 1.0, 5.0}) EXPECT_GT(accel_That(u, s), 0.0);
}

TEST(AccelThat, ZeroLimit) {
  for (double xi : {0.5, 1.0, 2.0}) {
    const AccelScale s(xi);
    const double limit = 1 / (4 * pi * pi * xi * xi * xi);
    EXPECT_NEAR(accel_That(0.0, s), limit, 1e-15 * limit);
    // Continuity across the series switch.
    EXPECT_NEAR(accel_That(1e-4 / xi, s), accel_That(2e-4 / xi, s), 1e-3 * limit);
  }
}

TEST(AccelThat, ExponentialSuppression) {
  const AccelScale s(1.0);
  EXPECT_LT(accel_That(-10, s) / accel_That(10, s), std::exp(-2 * pi * 10) * (1 + 1e-6));
  EXPECT_NEAR(accel_That(-10, s) / accel_That(10, s), std::exp(-2 * pi * 10),
              1e-10 * std::exp(-2 * pi * 10));
}

TEST(AccelThat, Scaling) {
  const double u = 2, xi = 3;
  EXPECT_NEAR(accel_That(u, AccelScale(xi)), std::pow(xi, -3) * accel_That(xi * u, AccelScale(1)),
              1e-15);
}

TEST(AccelThat, MatchesFormulaAwayFromZero) {
  for (double xi : {0.5, 1.0, 2.0}) {
    for (double u : {-2.0, -0.3, 0.01, 0.7, 3.0}) {
      const double direct = (std::pow(xi, 4) * u * u * u + xi * xi * u) /
                            (1 - std::exp(-2 * pi * xi * u)) / (2 * pi * std::pow(xi, 4));
      EXPECT_NEAR(accel_That(u, AccelScale(xi)), direct, 1e-13 * direct);
    }
  }
}

TEST(AccelQ, ClosedFormAtZero) {
  for (double xi : {0.5, 1.0, 2.0}) {
    const AccelScale s(xi);
    const double closed = 11 / (960 * pi * pi * pi * std::pow(xi, 4));
    EXPECT_NEAR(accel_Q0(s), closed, 1e-16 * closed);
    EXPECT_NEAR(accel_Q(0.0, s), closed, 1e-8 * closed);
  }
  EXPECT_NEAR(accel_Q0(AccelScale(1)), 0.000369, 1e-6);
  EXPECT_NEAR(2 * pi * accel_Q(0.0, AccelScale(1)), 11 / (480 * pi * pi), 1e-8 * 11 / (480 * pi * pi));
}

TEST(AccelQ, Increasing) {
  const AccelScale s(1.0);
  EXPECT_LT(accel_Q(-3, s), accel_Q(0, s));
  EXPECT_LT(accel_Q(0, s), accel_Q(3, s));
  double prev = 0;
  for (int i = 0; i < 50; ++i) {
    const double u = -10 + 20.0 * i / 49;
    const double q = accel_Q(u, s);
    EXPECT_GT(q, 0.0);
    EXPECT_GE(q, prev);
    if (u < 0) {
      EXPECT_LE(q, accel_Q0(s));
    }
    prev = q;
  }
}

TEST(AccelQ, PolynomialEstimate) {
  for (double xi : {0.5, 1.0, 2.0}) {
    const AccelScale s(xi);
    for (double u : {0.0, 0.5, 1.0, 3.0}) EXPECT_LE(accel_Q(u / xi, s), accel_Q_estimate(u / xi, s));
  }
}

TEST(AccelQ, DerivativeIsThat) {
  for (double xi : {1.0, 2.0}) {
    const AccelScale s(xi);
    for (double u : {-1.0, 0.5, 2.0}) {
      const double h = 1e-3;
      const double dq = (8 * (accel_Q(u + h, s) - accel_Q(u - h, s)) -
                         (accel_Q(u + 2 * h, s) - accel_Q(u - 2 * h, s))) /
                        (12 * h);
      EXPECT_NEAR(2 * pi * pi * dq, accel_That(u, s), 1e-5 * accel_That(u, s));
    }
  }
}

}  // namespace
