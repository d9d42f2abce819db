#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qei {

enum class ErrorKind {
  NoSignChange,
  NonFinite,
  NonConvergent,
  SingularDiscretization,
  DomainError,
  BracketFailure,
  UnsupportedDimension,
  UnsupportedScenario,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::SingularDiscretization: return "SingularDiscretization";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::UnsupportedScenario: return "UnsupportedScenario";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by caller-supplied parameters rather than by
  /// numerical breakdown.
  bool is_domain() const noexcept {
    return kind_ == ErrorKind::DomainError || kind_ == ErrorKind::UnsupportedDimension ||
           kind_ == ErrorKind::UnsupportedScenario;
  }

 private:
  ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

inline void require_domain(bool condition, const std::string& what) {
  require(condition, ErrorKind::DomainError, what);
}

}  // namespace detail
}  // namespace qei
