#include "rfl/selftest.hpp"

#include <cmath>

#include "rfl/corpus.hpp"
#include "rfl/hankel.hpp"
#include "rfl/operators.hpp"
#include "rfl/riesz_direct.hpp"

namespace rfl {

namespace {

template <class F>
CheckResult guarded(const std::string& name, double threshold, F&& measure) {
  CheckResult c{name, 0.0, threshold, false, {}};
  try {
    c.measured = measure();
    c.passed = std::isfinite(c.measured) && c.measured < threshold;
  } catch (const std::exception& e) {
    c.measured = NAN;
    c.note = e.what();
  }
  return c;
}

}  // namespace

std::vector<CheckResult> run_selftest(const GridPtr& g) {
  const int d = g->dim();
  std::vector<CheckResult> out;
  const auto gauss = gaussian(g);

  out.push_back(guarded("gaussian_self_duality", 1e-6, [&] {
    const auto gh = hankel_forward(gauss);
    const SpectralProfile expect(g, gauss.vec());
    return relative_l2_error(gh, expect);
  }));
  out.push_back(guarded("parseval", 1e-5, [&] {
    const auto ring = gaussian_ring(g);
    const double a = lp_norm(ring, 2.0);
    const double b = lp_norm(hankel_forward(ring), 2.0);
    return std::abs(a - b) / a;
  }));
  out.push_back(guarded("multiplier_identity", 1e-8, [&] {
    const auto u = band_limited(g, 2);
    return relative_l2_error(fractional_derivative(fractional_derivative(u, -1.0), 1.0), u);
  }));
  if (d >= 3) {
    const double alpha = std::min(2.6, d - 1.5);
    out.push_back(guarded("riesz_direct_vs_spectral", 1e-3, [&] {
      return relative_l2_error(riesz_potential_direct(gauss, alpha), riesz_potential_spectral(gauss, alpha));
    }));
  }
  return out;
}

}  // namespace rfl
