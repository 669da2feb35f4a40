#pragma once

#include <stdexcept>
#include <string>

namespace nrtlab {

/// A caller violated an operation's precondition (bad radius, order, geometry).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A field was evaluated at, or integrated across, one of its singular points.
class SingularPointError : public std::domain_error {
 public:
  explicit SingularPointError(const std::string& what) : std::domain_error(what) {}
};

/// The linear algebra produced something that contradicts a structural invariant.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace detail
}  // namespace nrtlab
