#pragma once

#include <string>
#include <vector>

#include "rfl/grid.hpp"

namespace rfl {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string note;  // set when the check could not be evaluated
};

/// Gaussian self-duality, Parseval, D^s D^{-s} identity and the direct
/// versus spectral Riesz cross-check on the given grid.
std::vector<CheckResult> run_selftest(const GridPtr& g);

}  // namespace rfl
