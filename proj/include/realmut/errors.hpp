#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace realmut {

/// Raised when an operation is called outside the pq-regime it is defined for.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a map produces a value that is not representable (non-finite,
/// or a rational-map coordinate that underflowed to zero). Carries the
/// iteration index when the failure happened inside an orbit.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what,
                      std::optional<std::size_t> step = std::nullopt)
      : std::range_error(what), step_(step) {}

  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::optional<std::size_t> step_;
};

}  // namespace realmut
