#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <sstream>

#include "qei/error.hpp"

namespace qei::numerics {

/// A partial sum together with a rigorous bound on the neglected tail.
struct SeriesResult {
  double value = 0.0;
  std::int64_t n_terms = 0;
  double tail_bound = 0.0;
};

/// Sum of term(1) + ... + term(n_terms), accumulated with Neumaier
/// compensation.
template <class Term>
  requires std::invocable<const Term&, std::int64_t>
double partial_sum(const Term& term, std::int64_t n_terms) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    const double t = static_cast<double>(term(n));
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      carry += (sum - next) + t;
    } else {
      carry += (t - next) + sum;
    }
    sum = next;
  }
  return sum + carry;
}

/// Sums term(n) for n = 1, 2, ... until the caller's tail bound after N
/// terms, tail_bound(N) >= |sum_{n>N} term(n)|, drops to rel_tol times the
/// partial sum.
template <class Term, class Tail>
  requires std::invocable<const Term&, std::int64_t> && std::invocable<const Tail&, std::int64_t>
SeriesResult sum_series(const Term& term, const Tail& tail_bound, double rel_tol,
                        std::int64_t max_terms = 10'000'000) {
  qei::detail::require_domain(rel_tol > 0.0, "series tolerance must be positive");
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t n = 1; n <= max_terms; ++n) {
    const double t = static_cast<double>(term(n));
    if (!std::isfinite(t)) {
      std::ostringstream msg;
      msg << "series term " << n << " is not finite";
      qei::detail::fail(ErrorKind::NonFinite, msg.str());
    }
    const double next = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      carry += (sum - next) + t;
    } else {
      carry += (t - next) + sum;
    }
    sum = next;
    const double value = sum + carry;
    const double tail = static_cast<double>(tail_bound(n));
    if (tail <= rel_tol * std::abs(value)) {
      return SeriesResult{value, n, std::abs(tail)};
    }
  }
  std::ostringstream msg;
  msg << "series did not reach relative tolerance " << rel_tol << " within " << max_terms
      << " terms";
  qei::detail::fail(ErrorKind::NonConvergent, msg.str());
}

/// Overflow-safe hyperbolic cosecant for x > 0: 2 e^{-x} / (1 - e^{-2x}).
inline double csch(double x) { return 2.0 * std::exp(-x) / -std::expm1(-2.0 * x); }

/// Upper bound on sum_{n > N} csch^p(n c) for c > 0 and p > 0, from
/// csch(x) <= 2 e^{-x} / (1 - e^{-2 x0}) for x >= x0 and a geometric tail.
inline double csch_power_tail(double c, int power, std::int64_t n) {
  const double x0 = static_cast<double>(n + 1) * c;
  const double prefactor = std::pow(2.0 / -std::expm1(-2.0 * x0), power);
  const double first = std::exp(-power * x0);
  return prefactor * first / -std::expm1(-power * c);
}

}  // namespace qei::numerics
