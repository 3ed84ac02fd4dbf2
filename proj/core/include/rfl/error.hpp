#pragma once

#include <stdexcept>
#include <string>

namespace rfl {

/// Thrown when an input parameter violates a range condition. The message
/// names the inequality that failed, e.g. "r < d/2 violated (r=3, d=5)".
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  enum class Kind {
    TailTruncation,      // integrand has not decayed at the grid edge
    Divergence,          // integral or optimizer diverged
    SingularQuadrature,  // diagonal refinement did not converge
    GridTooCoarse,
    DegenerateInput,
    NotConverged,
  };

  NumericalError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(NumericalError::Kind kind) noexcept;

}  // namespace rfl
