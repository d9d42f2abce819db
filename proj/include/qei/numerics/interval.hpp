#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "qei/error.hpp"

namespace qei {

/// Marker for an unbounded sampling duration or an infinite inverse
/// temperature. Operations taking such a parameter return their closed-form
/// limits when handed this value.
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

inline bool is_infinite(double x) noexcept { return std::isinf(x) && x > 0; }

namespace numerics {

/// A finite open interval (lo, hi) with lo < hi.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      detail::fail(ErrorKind::DomainError, "interval endpoints must be finite");
    }
    if (!(lo < hi)) {
      std::ostringstream msg;
      msg << "interval requires lo < hi, got (" << lo << ", " << hi << ")";
      detail::fail(ErrorKind::DomainError, msg.str());
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

 private:
  double lo_;
  double hi_;
};

/// Default working tolerances. Every numerical entry point takes the value
/// it needs explicitly; this struct only collects the defaults in one place
/// so front ends can override and report them.
struct Tolerances {
  double root_abs = 1e-10;
  double series_rel = 1e-8;
  double quadrature_rel = 1e-9;
  int oracle_grid = 4000;
};

}  // namespace numerics
}  // namespace qei
