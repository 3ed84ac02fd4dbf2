#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rfl/corpus.hpp"
#include "rfl/error.hpp"
#include "rfl/estimates.hpp"
#include "rfl/grid.hpp"
#include "rfl/operators.hpp"

using namespace rfl;
using std::numbers::pi;

namespace {

GridPtr grid5() { return RadialGrid::standard(5, 2048); }

// |S^{d-1}| int_0^inf e^{-pi r^2} r^{d-1+b} dr.
double gaussian_moment(int d, double b) {
  return Convention::sphere_area(d) * std::tgamma(0.5 * (d + b)) / (2.0 * std::pow(pi, 0.5 * (d + b)));
}

}  // namespace

TEST_CASE("smooth_bridge is a monotone C-infinity step") {
  CHECK(smooth_bridge(-1.0) == 0.0);
  CHECK(smooth_bridge(0.0) == 0.0);
  CHECK(smooth_bridge(1.0) == 1.0);
  CHECK(smooth_bridge(0.5) == doctest::Approx(0.5));
  double prev = 0.0;
  for (double t = 0.01; t < 1.0; t += 0.01) {
    CHECK(smooth_bridge(t) + smooth_bridge(1.0 - t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(smooth_bridge(t) >= prev);
    prev = smooth_bridge(t);
  }
  const CutoffSpec theta{4.0};
  CHECK(theta(3.9) == 1.0);
  CHECK(theta(8.1) == 0.0);
  const MollifierSpec psi;
  CHECK(psi(1.0) == 1.0);
  CHECK(psi(2.0) == 0.0);
}

TEST_CASE("dyadic ladder and log-log slope") {
  const auto l = dyadic_ladder(-3, 6);
  REQUIRE(l.size() == 10);
  CHECK(l.front() == 0.125);
  CHECK(l.back() == 64.0);
  std::vector<double> y;
  for (double x : l) y.push_back(3.0 * std::pow(x, -1.7));
  CHECK(loglog_slope(l, y) == doctest::Approx(-1.7).epsilon(1e-12));
}

TEST_CASE("frequency split sums back to the profile") {
  const auto g = grid5();
  const RadialProfile u = gaussian_ring(g);
  const FrequencySplit fs = frequency_split(u, 1.5);
  CHECK(relative_l2_error(fs.low + fs.high, u) < 1e-12);
  // A cutoff far above the band leaves everything in the low part.
  CHECK(relative_l2_error(frequency_split(gaussian(g), 1e-3).low, gaussian(g)) < 1e-6);
  CHECK_THROWS_AS(frequency_split(u, 0.0), ParameterError);
}

TEST_CASE("tail fit recovers a power law and flags fast decay") {
  const auto g = grid5();
  const DecayFit pt = tail_decay_fit(power_tail_bump(g, 6.0), {8.0, 200.0});
  CHECK(pt.sigma_hat == doctest::Approx(6.0).epsilon(2e-3));
  CHECK(pt.power_law_regime);
  CHECK_FALSE(pt.below_floor);
  const DecayFit ga = tail_decay_fit(gaussian(g), {8.0, 200.0});
  CHECK(ga.below_floor);
  CHECK(std::isinf(ga.sigma_hat));
  CHECK_THROWS_AS(tail_decay_fit(gaussian(g), {8.0, 8.01}), NumericalError);
  CHECK_THROWS_AS(tail_decay_fit(gaussian(g), {8.0, 1e5}), ParameterError);
}

TEST_CASE("weighted integrals of the gaussian") {
  const int d = 5;
  const auto g = grid5();
  const RadialProfile u = gaussian(g);
  for (double b : {-2.0, 0.0, 1.5}) {
    CHECK(power_weighted_l1(u, b) == doctest::Approx(gaussian_moment(d, b)).epsilon(1e-8));
  }
  const double alpha = 3.0, delta = 0.5;
  CHECK(weighted_decay_integral(u, alpha, delta) ==
        doctest::Approx(gaussian_moment(d, -(alpha - 0.5 * d + delta))).epsilon(1e-8));
  CHECK(weighted_tail_integral(u, 1.0, 30.0, Side::inner) == doctest::Approx(gaussian_moment(d, -1.0)).epsilon(1e-8));
  const double split = weighted_tail_integral(u, 1.0, 0.7, Side::inner) + weighted_tail_integral(u, 1.0, 0.7, Side::outer);
  CHECK(split == doctest::Approx(gaussian_moment(d, -1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(weighted_tail_integral(u, 5.0, 1.0, Side::inner), NumericalError);
  CHECK_THROWS_AS(weighted_decay_integral(u, alpha, 2.0), ParameterError);
}

TEST_CASE("weight primitives differentiate back to the weight") {
  const WeightSpec ext = WeightSpec::exterior(3.0, 5, 2.0, 0.3, 2.0);
  const WeightSpec in = WeightSpec::interior(3.0, 5, 2.0, 0.3, 2.0);
  for (double rho : {0.5, 1.0, 3.0, 7.0}) {
    const double h = 1e-6 * rho;
    const double we = (ext.primitive(rho - h) - ext.primitive(rho + h)) / (2 * h);
    const double wi = (in.primitive(rho - h) - in.primitive(rho + h)) / (2 * h);
    CHECK(we == doctest::Approx(rho > 2.0 ? std::pow(rho, -ext.kappa) : 0.0).epsilon(1e-6));
    CHECK(wi == doctest::Approx(rho < 2.0 ? std::pow(rho, -in.kappa) : 0.0).epsilon(1e-6));
  }
}

TEST_CASE("high-frequency probe on a borderline spectrum") {
  const auto g = grid5();
  const double s = 1.0;
  const auto uh = power_spectrum(g, s + 2.5 + 0.1, 0.1);
  const BoundProbeReport rep = high_freq_decay_probe(uh, s, {0.5, 1.0, 2.0}, {0.01, 500.0});
  CHECK(rep.passed);
  REQUIRE(rep.metrics.size() == 1);
  CHECK(std::abs(rep.metrics[0].second - (s - 0.5)) <= kSlopeTolerance);
  CHECK_THROWS_AS(high_freq_decay_probe(uh, 0.5, {1.0}, {0.01, 500.0}), ParameterError);
}

TEST_CASE("scaling probes stay flat on the gaussian") {
  const auto g = grid5();
  const ScalingProbe p = scaling_invariance_probe(gaussian(g), 3.5, 0.5, 2.0);
  CHECK(p.exterior.samples.size() == 10);
  CHECK(p.exterior.passed);
  CHECK(p.interior.passed);
}

TEST_CASE("ball average and kernel probes are bounded") {
  const auto g = grid5();
  const BoundProbeReport b = ball_average_probe(gaussian(g), 3.5, 2.0);
  CHECK(b.passed);
  CHECK(std::isfinite(b.sup_ratio));
  const BoundProbeReport k = dn1_kernel_probe(gaussian(g), 5.5, -0.5);
  CHECK(k.passed);
  CHECK(k.sup_ratio > 0.0);
}

TEST_CASE("commutator residual decays and tail mass splits") {
  const auto g = grid5();
  const RadialProfile phi = gaussian(g);
  const std::vector<double> rhos{8, 16, 32, 64, 128};
  for (double r : {0.8, 1.2, 1.8}) {
    std::vector<double> ys;
    for (double rho : rhos) ys.push_back(commutator_residual(phi, r, rho, {}));
    CHECK(-loglog_slope(rhos, ys) >= r / 4.0 - 0.05);
  }
  const TailMass m = tail_mass_split(phi, 1.2, 3.0);
  CHECK(m.interior_sq + m.exterior_sq == doctest::Approx(m.total_sq).epsilon(1e-10));
  CHECK(exterior_tail_mass(phi, 1.2, 6.0) < exterior_tail_mass(phi, 1.2, 3.0));
  CHECK_THROWS_AS(commutator_residual(phi, 1.2, 0.5, {}), ParameterError);
  CHECK_THROWS_AS(commutator_residual(phi, 2.0, 8.0, {}), ParameterError);
}

TEST_CASE("pqr threshold formulas and guarantee") {
  const PqrThreshold t = pqr_threshold(2.0, 4.0, 6.0, 1.0, 0.5, 2.0);
  CHECK(t.eta == doctest::Approx(std::sqrt(0.5 / 4.0)));
  const double M = std::pow(4.0 * 2.0 / 0.5, 0.5);
  CHECK(t.c == doctest::Approx(0.5 / (2.0 * std::pow(M, 4.0))));
  CHECK_THROWS_AS(pqr_threshold(2.0, 2.0, 6.0, 1.0, 0.5, 2.0), ParameterError);
  CHECK_THROWS_AS(pqr_threshold(2.0, 4.0, 6.0, 0.0, 0.5, 2.0), ParameterError);

  // A gaussian family under one budget.
  const auto g = grid5();
  double a0 = 0.0, b0 = INFINITY, g0 = 0.0;
  std::vector<RadialProfile> fam;
  for (double w : {0.7, 1.0, 1.4}) fam.push_back(gaussian(g, w));
  for (const auto& f : fam) {
    a0 = std::max(a0, std::pow(lp_norm(f, 2.0), 2.0));
    b0 = std::min(b0, std::pow(lp_norm(f, 4.0), 4.0));
    g0 = std::max(g0, std::pow(lp_norm(f, 6.0), 6.0));
  }
  const PqrThreshold c = pqr_threshold(2.0, 4.0, 6.0, a0, b0, g0);
  for (const auto& f : fam) CHECK(superlevel_measure(f, c.eta) >= c.c);
}
