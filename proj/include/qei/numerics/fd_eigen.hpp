#pragma once

// Finite-difference oracle for the lowest eigenvalues of the self-adjoint
// problems
//
//   (q4 g'')'' - (p2 g')' + v0 g = lambda w g     on (lo, hi)
//
// with Dirichlet conditions (second order) or clamped conditions
// g = g' = 0 (fourth order). The discrete operator is assembled from the
// quadratic form  int q4 g''^2 + p2 g'^2 + v0 g^2  so the matrix pencil
// (A, B) is symmetric with B diagonal. Second differences are taken at
// every node; the clamped condition enters through a ghost node mirrored
// across each end, which together with half trapezoid weights at the end
// nodes reproduces the usual 7 -4 1 boundary row of the g'''' stencil.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "qei/error.hpp"
#include "qei/numerics/interval.hpp"

namespace qei::numerics {

enum class Order { Second = 2, Fourth = 4 };

/// Coefficient function of the independent variable.
using Coefficient = std::function<double(double)>;

inline Coefficient constant(double c) {
  return [c](double) { return c; };
}

struct EigenProblem1D {
  Order order = Order::Second;
  Coefficient q4 = constant(0.0);
  Coefficient p2 = constant(1.0);
  Coefficient v0 = constant(0.0);
  Coefficient weight = constant(1.0);
  Interval interval{0.0, 1.0};
};

/// Samples on the uniform grid lo, lo + h, ..., hi with h = (hi - lo)/(n - 1).
class GridFunction {
 public:
  GridFunction(const Interval& interval, std::vector<double> values)
      : interval_(interval), values_(std::move(values)) {
    qei::detail::require_domain(values_.size() >= 10,
                                "grid function needs at least 8 interior points");
  }

  const Interval& interval() const noexcept { return interval_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept {
    return interval_.length() / static_cast<double>(values_.size() - 1);
  }
  double point(std::size_t i) const noexcept {
    return i + 1 == values_.size() ? interval_.hi()
                                   : interval_.lo() + static_cast<double>(i) * spacing();
  }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  Interval interval_;
  std::vector<double> values_;
};

/// Symmetric band matrix stored by lower diagonals: entry (i, i - k) for
/// k = 0..bandwidth.
class BandedSymmetric {
 public:
  BandedSymmetric(int n, int bandwidth)
      : n_(n), bw_(bandwidth), data_(static_cast<std::size_t>(n) * (bandwidth + 1), 0.0) {}

  int size() const noexcept { return n_; }
  int bandwidth() const noexcept { return bw_; }

  double& lower(int i, int k) { return data_[static_cast<std::size_t>(i) * (bw_ + 1) + k]; }
  double lower(int i, int k) const { return data_[static_cast<std::size_t>(i) * (bw_ + 1) + k]; }

  double operator()(int i, int j) const {
    if (i < j) std::swap(i, j);
    const int k = i - j;
    return k > bw_ ? 0.0 : lower(i, k);
  }

  void add(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    lower(i, i - j) += v;
  }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < n_; ++i) {
      y[i] += lower(i, 0) * x[i];
      for (int k = 1; k <= bw_ && i - k >= 0; ++k) {
        const double a = lower(i, k);
        y[i] += a * x[i - k];
        y[i - k] += a * x[i];
      }
    }
    return y;
  }

 private:
  int n_;
  int bw_;
  std::vector<double> data_;
};

/// Banded Cholesky factor L with A = L L^T; ok() is false when A is not
/// numerically positive definite.
class BandedCholesky {
 public:
  explicit BandedCholesky(const BandedSymmetric& a) : l_(a) {
    const int n = l_.size();
    const int bw = l_.bandwidth();
    for (int i = 0; i < n; ++i) {
      for (int k = bw; k >= 0; --k) {
        const int j = i - k;
        if (j < 0) continue;
        double s = l_.lower(i, k);
        for (int m = 1; m <= bw - k && j - m >= 0; ++m) {
          s -= l_.lower(i, k + m) * l_.lower(j, m);
        }
        if (k == 0) {
          if (!(s > 0.0) || !std::isfinite(s)) {
            ok_ = false;
            return;
          }
          l_.lower(i, 0) = std::sqrt(s);
        } else {
          l_.lower(i, k) = s / l_.lower(j, 0);
        }
      }
    }
  }

  bool ok() const noexcept { return ok_; }

  Eigen::VectorXd solve(Eigen::VectorXd b) const {
    const int n = l_.size();
    const int bw = l_.bandwidth();
    for (int i = 0; i < n; ++i) {
      for (int k = 1; k <= bw && i - k >= 0; ++k) b[i] -= l_.lower(i, k) * b[i - k];
      b[i] /= l_.lower(i, 0);
    }
    for (int i = n - 1; i >= 0; --i) {
      b[i] /= l_.lower(i, 0);
      for (int k = 1; k <= bw && i - k >= 0; ++k) b[i - k] -= l_.lower(i, k) * b[i];
    }
    return b;
  }

 private:
  BandedSymmetric l_;
  bool ok_ = true;
};

/// One term c (r . x)^2 of the quadratic form, r having at most three
/// nonzeros over interior unknowns.
struct FormRow {
  std::array<int, 3> index{};
  std::array<double, 3> coeff{};
  int count = 0;
  double weight = 0.0;

  double apply(const double* x, Eigen::Index stride = 1) const {
    double s = 0.0;
    for (int k = 0; k < count; ++k) s += coeff[k] * x[index[k] * stride];
    return s;
  }
};

/// The discrete pencil (A, B) on the interior unknowns of an n-point grid.
/// A is also kept as the list of difference rows it is summed from:
/// evaluating x^T A x as sum c (r . x)^2 avoids the cancellation that
/// limits x^T (A x) to a relative accuracy of about eps cond(A), which for
/// fourth-order problems on fine grids is far from negligible.
struct Discretization {
  Interval interval;
  int n_grid;
  BandedSymmetric stiffness;
  Eigen::VectorXd mass;  // diagonal of B
  std::vector<FormRow> form;

  double spacing() const { return interval.length() / (n_grid - 1); }
  double node(int i) const {
    return i == n_grid - 1 ? interval.hi() : interval.lo() + i * spacing();
  }
};

inline Discretization assemble(const EigenProblem1D& problem, int n_grid) {
  qei::detail::require_domain(n_grid >= 10, "oracle grid needs at least 8 interior points");
  const Interval& iv = problem.interval;
  const int m = n_grid - 2;
  const bool fourth = problem.order == Order::Fourth;
  const int bw = fourth ? 2 : 1;
  Discretization disc{iv, n_grid, BandedSymmetric(m, bw), Eigen::VectorXd(m), {}};
  const double h = disc.spacing();

  // Adds c * r r^T for a sparse row r given over grid nodes; boundary
  // nodes carry g = 0 and drop out.
  auto add_outer = [&](const std::vector<std::pair<int, double>>& row, double c) {
    FormRow r;
    r.weight = c;
    for (const auto& [ni, ci] : row) {
      if (ni <= 0 || ni >= n_grid - 1) continue;
      r.index[r.count] = ni - 1;
      r.coeff[r.count++] = ci;
    }
    if (r.count > 0) disc.form.push_back(r);
    for (const auto& [ni, ci] : row) {
      if (ni <= 0 || ni >= n_grid - 1) continue;
      for (const auto& [nj, cj] : row) {
        if (nj <= 0 || nj >= n_grid - 1 || nj > ni) continue;
        disc.stiffness.add(ni - 1, nj - 1, c * ci * cj);
      }
    }
  };

  if (fourth) {
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < n_grid; ++i) {
      const double x = disc.node(i);
      const double q = problem.q4(x);
      qei::detail::require_domain(q > 0.0 && std::isfinite(q),
                                  "leading coefficient q4 must be positive on the interval");
      auto mirror = [&](int node) {
        if (node < 0) return -node;
        if (node > n_grid - 1) return 2 * (n_grid - 1) - node;
        return node;
      };
      std::vector<std::pair<int, double>> row;
      for (const auto& [node, c] :
           {std::pair{i - 1, inv_h2}, std::pair{i, -2.0 * inv_h2}, std::pair{i + 1, inv_h2}}) {
        const int mapped = mirror(node);
        auto it = std::find_if(row.begin(), row.end(), [&](auto& e) { return e.first == mapped; });
        if (it == row.end()) {
          row.emplace_back(mapped, c);
        } else {
          it->second += c;
        }
      }
      const double trap = (i == 0 || i == n_grid - 1) ? 0.5 * h : h;
      add_outer(row, trap * q);
    }
  }

  for (int k = 0; k + 1 < n_grid; ++k) {
    const double xm = disc.node(k) + 0.5 * h;
    const double p = problem.p2(xm);
    qei::detail::require(std::isfinite(p), ErrorKind::NonFinite, "p2 coefficient is not finite");
    if (p == 0.0) continue;
    add_outer({{k, -1.0 / h}, {k + 1, 1.0 / h}}, h * p);
  }

  for (int i = 1; i + 1 < n_grid; ++i) {
    const double x = disc.node(i);
    const double v = problem.v0(x);
    const double w = problem.weight(x);
    qei::detail::require(std::isfinite(v), ErrorKind::NonFinite, "potential is not finite");
    if (!(w > 0.0) || !std::isfinite(w)) {
      std::ostringstream msg;
      msg << "weight is not positive at x = " << x;
      qei::detail::fail(ErrorKind::SingularDiscretization, msg.str());
    }
    if (v != 0.0) add_outer({{i, 1.0}}, h * v);
    disc.mass[i - 1] = h * w;
  }
  return disc;
}

/// Rayleigh quotient x^T A x / x^T B x of interior values x.
inline double rayleigh_quotient(const Discretization& disc, const Eigen::VectorXd& x) {
  double num = 0.0;
  for (const auto& r : disc.form) {
    const double y = r.apply(x.data());
    num += r.weight * y * y;
  }
  return num / x.dot(disc.mass.cwiseProduct(x));
}

/// Y^T A Y from the difference rows.
inline Eigen::MatrixXd projected_form(const Discretization& disc, const Eigen::MatrixXd& y) {
  const Eigen::Index p = y.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd z(p);
  for (const auto& r : disc.form) {
    for (Eigen::Index j = 0; j < p; ++j) z[j] = r.apply(y.col(j).data());
    out.noalias() += r.weight * z * z.transpose();
  }
  return out;
}

/// Rayleigh quotient of a grid function (boundary samples are ignored).
inline double rayleigh_quotient(const Discretization& disc, const GridFunction& g) {
  const int m = disc.stiffness.size();
  qei::detail::require_domain(static_cast<int>(g.size()) == m + 2,
                              "grid function does not match the discretization");
  Eigen::VectorXd x(m);
  for (int i = 0; i < m; ++i) x[i] = g[i + 1];
  return rayleigh_quotient(disc, x);
}

struct FdEigenpair {
  double value;
  GridFunction mode;  // B-normalized, boundary samples zero
};

/// The k lowest eigenpairs of the discrete pencil.
///
/// Block inverse iteration (subspace iteration with A^{-1} B) with a
/// Rayleigh-Ritz projection after every sweep. A is factored once; when A
/// is not positive definite the pencil is shifted below its Gershgorin
/// bound first. Returned values are Rayleigh quotients of the returned
/// vectors.
inline std::vector<FdEigenpair> fd_lowest_eigenpairs(const EigenProblem1D& problem, int n_grid,
                                                     int k) {
  qei::detail::require_domain(n_grid >= 64, "oracle grid must have at least 64 points");
  qei::detail::require_domain(k >= 1, "need at least one eigenpair");
  const Discretization disc = assemble(problem, n_grid);
  const int m = disc.stiffness.size();
  qei::detail::require_domain(k <= m, "more eigenpairs requested than unknowns");
  const int p = std::min(m, k + 4);
  const Eigen::VectorXd& mass = disc.mass;

  BandedSymmetric shifted = disc.stiffness;
  BandedCholesky chol(shifted);
  if (!chol.ok()) {
    double lower = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double off = 0.0;
      for (int j = std::max(0, i - shifted.bandwidth());
           j <= std::min(m - 1, i + shifted.bandwidth()); ++j) {
        if (j != i) off += std::abs(disc.stiffness(i, j)) / std::sqrt(mass[i] * mass[j]);
      }
      lower = std::min(lower, disc.stiffness(i, i) / mass[i] - off);
    }
    const double sigma = lower - 0.1 * std::abs(lower) - 1.0;
    for (int i = 0; i < m; ++i) shifted.add(i, i, -sigma * mass[i]);
    chol = BandedCholesky(shifted);
    qei::detail::require(chol.ok(), ErrorKind::NonConvergent,
                         "shifted oracle matrix is not positive definite");
  }

  auto b_dot = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return u.dot(mass.cwiseProduct(v));
  };

  Eigen::MatrixXd x(m, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < m; ++i) {
      x(i, j) = std::sin((j + 1) * std::numbers::pi * (i + 1) / (m + 1));
    }
  }

  Eigen::VectorXd ritz = Eigen::VectorXd::Constant(p, std::numeric_limits<double>::infinity());
  constexpr int kMaxSweeps = 2000;
  int settled = 0;
  double best_change = std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    Eigen::MatrixXd y(m, p);
    for (int j = 0; j < p; ++j) y.col(j) = chol.solve(mass.cwiseProduct(x.col(j)));

    // B-orthonormalize by modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < p; ++j) {
        for (int i = 0; i < j; ++i) y.col(j) -= b_dot(y.col(i), y.col(j)) * y.col(i);
        const double norm = std::sqrt(b_dot(y.col(j), y.col(j)));
        qei::detail::require(norm > 0.0 && std::isfinite(norm), ErrorKind::NonConvergent,
                             "oracle subspace collapsed");
        y.col(j) /= norm;
      }
    }

    const Eigen::MatrixXd projected = projected_form(disc, y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
    qei::detail::require(small.info() == Eigen::Success, ErrorKind::NonConvergent,
                         "Rayleigh-Ritz projection failed");
    x = y * small.eigenvectors();
    const Eigen::VectorXd next = small.eigenvalues();

    double change = 0.0;
    for (int j = 0; j < k; ++j) {
      change = std::max(change, std::abs(next[j] - ritz[j]) / std::max(std::abs(next[j]), 1e-300));
    }
    ritz = next;
    if (change < 1e-14) {
      if (++settled == 2) break;
    } else {
      settled = 0;
    }
    // Fourth-order stencils on fine grids have a round-off floor well
    // above 1e-14; stop once the change has not improved for a while.
    if (change < 0.5 * best_change) {
      best_change = change;
      stale = 0;
    } else if (++stale >= 8 && best_change < 1e-6) {
      break;
    }
    if (sweep + 1 == kMaxSweeps) {
      qei::detail::fail(ErrorKind::NonConvergent, "oracle inverse iteration did not converge");
    }
  }

  std::vector<FdEigenpair> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd v = x.col(j);
    v /= std::sqrt(b_dot(v, v));
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
    std::vector<double> values(static_cast<std::size_t>(n_grid), 0.0);
    for (int i = 0; i < m; ++i) values[i + 1] = v[i];
    out.push_back({rayleigh_quotient(disc, v), GridFunction(disc.interval, std::move(values))});
  }
  return out;
}

/// Smallest eigenvalue of the discretized problem on an n_grid-point grid.
inline double fd_min_eigenvalue(const EigenProblem1D& problem, int n_grid) {
  return fd_lowest_eigenpairs(problem, n_grid, 1).front().value;
}

/// Coarse/fine pair on n and 2n - 1 points (exactly half the spacing) and
/// the Richardson value (4 fine - coarse) / 3 for an O(h^2) scheme.
struct RichardsonEstimate {
  double coarse;
  double fine;
  double extrapolated;
};

inline RichardsonEstimate richardson(double coarse, double fine) {
  return {coarse, fine, (4.0 * fine - coarse) / 3.0};
}

inline RichardsonEstimate fd_min_eigenvalue_extrapolated(const EigenProblem1D& problem,
                                                         int n_grid) {
  return richardson(fd_min_eigenvalue(problem, n_grid), fd_min_eigenvalue(problem, 2 * n_grid - 1));
}

/// The k lowest eigenvalues, each Richardson-extrapolated.
inline std::vector<double> fd_lowest_eigenvalues_extrapolated(const EigenProblem1D& problem,
                                                              int n_grid, int k) {
  const auto coarse = fd_lowest_eigenpairs(problem, n_grid, k);
  const auto fine = fd_lowest_eigenpairs(problem, 2 * n_grid - 1, k);
  std::vector<double> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) out.push_back(richardson(coarse[j].value, fine[j].value).extrapolated);
  return out;
}

}  // namespace qei::numerics
