#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qei/eigen.hpp"

namespace {

using namespace qei::eigen;
using qei::ErrorKind;
using qei::kInfinite;
using qei::numerics::fd_lowest_eigenpairs;
using qei::numerics::fd_lowest_eigenvalues_extrapolated;
using qei::numerics::fd_min_eigenvalue;
using qei::numerics::fd_min_eigenvalue_extrapolated;

constexpr double kBeta = 4.730040744862704;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const qei::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected qei::Error";
  return ErrorKind::UnsupportedScenario;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Dirichlet, Values) {
  EXPECT_NEAR(dirichlet_min_eig(pi), 1.0, 1e-15);
  EXPECT_NEAR(dirichlet_min_eig(1.0), 9.8696044010893586, 1e-14);
  EXPECT_EQ(dirichlet_min_eig(kInfinite), 0.0);
  EXPECT_EQ(kind_of([] { dirichlet_min_eig(0.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { dirichlet_min_eig(-1.0); }), ErrorKind::DomainError);
}

TEST(ClampedBeam, Beta) {
  EXPECT_NEAR(clamped_beam_beta(), 4.730040745, 1e-8);
  EXPECT_NEAR(std::pow(clamped_beam_beta(), 4), 500.5639, 1e-3);
  EXPECT_EQ(clamped_beam_beta(), clamped_beam_beta());
}

TEST(ClampedBeam, MatchesOracle) {
  const double fd = fd_min_eigenvalue_extrapolated(clamped_beam_problem(1.0), 1000).extrapolated;
  EXPECT_LT(rel(fd, std::pow(clamped_beam_beta(), 4)), 0.005);
}

TEST(AccelLambda, InfiniteDuration) {
  EXPECT_EQ(accel_lambda0(kInfinite), 1.0);
  EXPECT_EQ(kind_of([] { accel_lambda0(0.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { accel_lambda0(-2.0); }), ErrorKind::DomainError);
}

TEST(AccelLambda, HighPrecisionValues) {
  // Roots of the same equation computed at 30 digits.
  EXPECT_NEAR(accel_lambda0(0.05), 8949.864096355256, 1e-9 * 8949.86);
  EXPECT_NEAR(accel_lambda0(0.5), 90.04672851085546, 1e-11 * 90);
  EXPECT_NEAR(accel_lambda0(1.0), 22.93772677237409, 1e-12 * 23);
  EXPECT_NEAR(accel_lambda0(5.0), 1.661644655322209, 1e-13);
  EXPECT_NEAR(accel_lambda0(100.0), 1.001015467121359, 1e-13);
}

TEST(AccelLambda, ShortTimeAsymptote) {
  const double chi = 0.05;
  EXPECT_NEAR(accel_lambda0(chi) * chi * chi / (kBeta * kBeta), 1.0, 0.01);
}

TEST(AccelLambda, ApproachesOneSlowly) {
  // lambda0 - 1 ~ 1.03 (pi/chi)^2 for large chi.
  const double gap = accel_lambda0(100.0) - 1.0;
  EXPECT_NEAR(gap, 1.015467121359e-3, 1e-12);
  EXPECT_LT(accel_lambda0(1000.0) - 1.0, 1e-3);
}

TEST(AccelLambda, ResidualSmall) {
  for (double chi : {0.001, 0.1, 1.0, 10.0, 1000.0}) {
    const auto s = accel_lambda0_solution(chi);
    EXPECT_LE(s.residual, 1e-9 * std::sqrt(s.lambda + 1));
    EXPECT_EQ(s.branch, 0);
    EXPECT_GT(s.lambda, 1.0);
  }
}

TEST(AccelLambda, StrictlyDecreasing) {
  double prev = kInfinite;
  for (int i = 0; i < 60; ++i) {
    const double chi = 0.1 * std::pow(1000.0, i / 59.0);
    const double l = accel_lambda0(chi);
    EXPECT_LT(l, prev);
    EXPECT_GT(l, 1.0);
    prev = l;
  }
}

TEST(AccelLambda, MatchesOracle) {
  for (double chi : {0.5, 1.0, 5.0}) {
    const auto r = fd_min_eigenvalue_extrapolated(accel_problem(chi), 1000);
    EXPECT_LT(rel(accel_lambda_from_mu(r.extrapolated), accel_lambda0(chi)), 0.005) << chi;
    EXPECT_LT(rel(r.extrapolated, accel_mu(accel_lambda0(chi))), 0.005) << chi;
  }
}

TEST(AccelLambda, MuIdentity) {
  const double l = 1.7;
  EXPECT_NEAR((l + 1) * (l + 1) - 2 * (l + 1) + 11.0 / 20, (20 * l * l - 9) / 20, 1e-14);
  EXPECT_NEAR(accel_lambda_from_mu(accel_mu(l)), l, 1e-14);
}

TEST(AccelBranches, Consistency) {
  for (double chi : {0.3, 2.0, 40.0}) {
    EXPECT_EQ(accel_lambda_branches(chi, 1).front(), accel_lambda0(chi));
  }
  const auto b = accel_lambda_branches(5.0, 3);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_LT(b[0], b[1]);
  EXPECT_LT(b[1], b[2]);
  EXPECT_NEAR(b[1], 5.681731694539418, 1e-12);
  EXPECT_NEAR(b[2], 12.83465474004206, 1e-11);
  EXPECT_EQ(kind_of([] { accel_lambda_branches(1.0, 0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { accel_lambda_branches(1.0, 6); }), ErrorKind::DomainError);
}

TEST(AccelBranches, MatchEvenOracleModes) {
  // The eigenfunction family is even in tau, so branch k pairs with the
  // 2k-th discrete mode; odd modes interleave.
  const double chi = 10.0;
  const auto branches = accel_lambda_branches(chi, 3);
  const auto fd = fd_lowest_eigenvalues_extrapolated(accel_problem(chi), 1000, 5);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(rel(accel_lambda_from_mu(fd[2 * k]), branches[k]), 0.01) << k;
  }
  const auto modes = fd_lowest_eigenpairs(accel_problem(chi), 401, 2);
  EXPECT_NEAR(modes[0].mode[100], modes[0].mode[300], 1e-9);
  EXPECT_NEAR(modes[1].mode[100], -modes[1].mode[300], 1e-9);
}

TEST(AccelEigenfunction, ClampedEnds) {
  for (double chi : {0.2, 1.0, 5.0, 30.0}) {
    for (double xi : {0.5, 2.0}) {
      const double tau0 = chi * xi;
      const double l = accel_lambda0(chi);
      double sup = 0;
      for (int i = 0; i <= 200; ++i) {
        sup = std::max(sup, std::abs(accel_eigenfunction(-0.5 * tau0 + tau0 * i / 200, l, tau0, xi)));
      }
      EXPECT_LE(std::abs(accel_eigenfunction(0.5 * tau0, l, tau0, xi)), 1e-8 * sup) << chi;
      EXPECT_LE(std::abs(accel_eigenfunction(-0.5 * tau0, l, tau0, xi)), 1e-8 * sup) << chi;
      EXPECT_LE(std::abs(accel_eigenfunction_derivative(0.5 * tau0, l, tau0, xi)),
                1e-9 * sup / xi)
          << chi;
    }
  }
}

TEST(AccelEigenfunction, DerivativeBuiltIntoAmplitude) {
  // g'(tau0/2) = 0 for any admissible lambda, not only at roots.
  for (double l : {1.3, 4.0, 17.0}) {
    EXPECT_NEAR(accel_eigenfunction_derivative(0.5, l, 1.0, 1.0), 0.0, 1e-9);
  }
}

TEST(AccelEigenfunction, SingularAmplitude) {
  // sqrt(lambda - 1) tau0 / 2 = pi makes the sine vanish.
  const double l = 1 + 4 * pi * pi;
  EXPECT_EQ(kind_of([&] { accel_eigenfunction(0.0, l, 1.0, 1.0); }), ErrorKind::DomainError);
}

TEST(Misner, HighPrecisionValues) {
  EXPECT_NEAR(misner_lambda(0.5), 8132.564173683718, 1e-8 * 8132.56);
  EXPECT_NEAR(misner_lambda(1.0), 531.8364590638099, 1e-9 * 531.8);
  EXPECT_NEAR(misner_lambda(2.0), 39.49210352486891, 1e-10 * 39.49);
  EXPECT_NEAR(misner_lambda(5.0), 2.557844184436812, 1e-11);
}

TEST(Misner, MatchesOracle) {
  for (double a : {0.5, 1.0, 2.0}) {
    const double fd = fd_min_eigenvalue_extrapolated(misner_problem(a), 1000).extrapolated;
    EXPECT_LT(rel(misner_lambda(a), fd), 0.005) << a;
  }
}

TEST(Misner, SmallScaleReducesToBeam) {
  const double a = 0.1;
  EXPECT_NEAR(misner_lambda(a) * std::pow(2 * std::tanh(a / 2), 4) / std::pow(kBeta, 4), 1.0, 0.02);
}

TEST(Misner, ScaleInvariantOracle) {
  const double a = 1.3;
  const double l1 = fd_min_eigenvalue(misner_problem(a, 1.0), 600);
  const double l3 = fd_min_eigenvalue(misner_problem(a, 3.0), 600);
  EXPECT_LT(rel(l3, l1), 1e-6);
}

TEST(Misner, DecreasingAndCovered) {
  double prev = kInfinite;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.2 + 4.8 * i / 19;
    const auto s = misner_lambda_solution(a);
    EXPECT_LT(s.lambda, prev);
    EXPECT_GT(s.lambda, 9.0 / 16);
    prev = s.lambda;
  }
  for (double a : {0.05, 10.0, 20.0}) EXPECT_NO_THROW(misner_lambda(a)) << a;
  EXPECT_EQ(kind_of([] { misner_lambda(0.0); }), ErrorKind::DomainError);
}

TEST(Conformal2D, ShiftedDirichlet) {
  EXPECT_NEAR(conformal2d_min_eig(0, pi), 1.0, 1e-15);
  EXPECT_EQ(conformal2d_min_eig(0, 2.7), dirichlet_min_eig(2.7));
  EXPECT_NEAR(conformal2d_min_eig(2, pi), 3.0, 1e-15);
  EXPECT_EQ(conformal2d_min_eig(1.5, kInfinite), 1.5);
  for (double S : {-7.0, -0.25, 0.0, 3.5, 1e3}) {
    // Exact up to the rounding of the sum S + pi^2/tau0^2.
    const double shifted = conformal2d_min_eig(S, 1.9);
    EXPECT_NEAR(shifted - conformal2d_min_eig(0, 1.9), S, 2e-16 * std::abs(shifted));
  }
  const double fd = fd_min_eigenvalue_extrapolated(conformal2d_problem(2.0, pi), 1000).extrapolated;
  EXPECT_LT(rel(fd, 3.0), 1e-4);
}

TEST(Harmonic, ZeroPoint) {
  EXPECT_EQ(harmonic_min_eig(0), 0.0);
  EXPECT_EQ(harmonic_min_eig(2), 2.0);
  EXPECT_EQ(harmonic_min_eig(-3), 3.0);
  for (double p : {0.5, -2.0, 4.0}) {
    const double fd = fd_min_eigenvalue_extrapolated(harmonic_problem(p, 20.0 / std::sqrt(std::abs(p))), 2000)
                          .extrapolated;
    EXPECT_LT(rel(fd, harmonic_min_eig(p)), 1e-4) << p;
  }
}

}  // namespace
