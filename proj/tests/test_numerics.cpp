#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rfl/bessel.hpp"
#include "rfl/corpus.hpp"
#include "rfl/error.hpp"
#include "rfl/grid.hpp"
#include "rfl/hankel.hpp"
#include "rfl/operators.hpp"
#include "rfl/riesz_direct.hpp"

using namespace rfl;
using std::numbers::pi;

namespace {

GridPtr grid(int d, std::size_t n = 1024) { return RadialGrid::standard(d, n); }

double ball_volume(int d) { return std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

}  // namespace

TEST_CASE("bessel_j against the standard library") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 3.5, 7.0}) {
    for (double x : {1e-6, 0.3, 1.0, 5.0, 11.9, 12.1, 30.0, 250.0, 4000.0}) {
      const double ref = std::cyl_bessel_j(nu, x);
      CHECK(std::abs(bessel_j(nu, x) - ref) <= 1e-13 + 1e-11 * std::abs(ref));
    }
  }
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(2.0, 0.0) == 0.0);
}

TEST_CASE("bessel_j_scaled is finite at the origin") {
  for (double nu : {0.0, 0.5, 1.5, 3.0}) {
    CHECK(bessel_j_scaled(nu, 0.0) == doctest::Approx(1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0))));
    CHECK(bessel_j_scaled(nu, 2.0) == doctest::Approx(std::cyl_bessel_j(nu, 2.0) / std::pow(2.0, nu)));
  }
}

TEST_CASE("half-integer orders match their elementary forms") {
  for (double x : {15.0, 40.0, 900.0}) {
    const double j05 = std::sqrt(2.0 / (pi * x)) * std::sin(x);
    const double j15 = std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
    CHECK(std::abs(bessel_j(0.5, x) - j05) < 1e-14);
    CHECK(std::abs(bessel_j(1.5, x) - j15) < 1e-14);
  }
}

TEST_CASE("grid construction and anchoring") {
  const auto g = grid(5, 2048);
  CHECK(g->size() == 2048);
  CHECK(g->r_max() == doctest::Approx(1e3).epsilon(1e-14));
  CHECK(g->node(g->nearest(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(RadialGrid::log_spaced(5, 1e-4, 1e3, 8), ParameterError);
  CHECK_THROWS_AS(RadialGrid::log_spaced(5, 1e3, 1e-4, 64), ParameterError);
  CHECK_THROWS_AS(RadialGrid::log_spaced(0, 1e-4, 1e3, 64), ParameterError);
}

TEST_CASE("radial integrals of closed-form integrands") {
  for (int d : {2, 3, 5}) {
    const auto g = grid(d);
    const double c = Convention::sphere_area(d);
    CHECK(c == doctest::Approx(d * ball_volume(d)).epsilon(1e-14));
    // int_{R^d} e^{-pi |x|^2} dx = 1.
    CHECK(lp_norm(gaussian(g), 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    // ||e^{-pi r^2}||_2^2 = 2^{-d/2}.
    CHECK(std::pow(lp_norm(gaussian(g), 2.0), 2) == doctest::Approx(std::pow(2.0, -0.5 * d)).epsilon(1e-10));
  }
  for (int d : {2, 3, 5}) {
    // A jump at a node costs O(h^2) with the midpoint value.
    const auto g = grid(d, 2048);
    CHECK(lp_norm(ball_indicator(g), 1.0) == doctest::Approx(ball_volume(d)).epsilon(5e-4));
  }
}

TEST_CASE("an integrand that does not decay is reported") {
  const auto g = grid(3);
  std::vector<double> f(g->size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(g->node(i), -3.0);
  CHECK_THROWS_AS(integrate_radial(*g, f), NumericalError);
  try {
    integrate_radial(*g, f);
  } catch (const NumericalError& e) {
    CHECK(e.kind() == NumericalError::Kind::TailTruncation);
  }
}

TEST_CASE("gaussian is its own transform and dilations scale as expected") {
  for (int d : {2, 3, 5}) {
    const auto g = grid(d, 2048);
    const RadialProfile u = gaussian(g);
    const SpectralProfile uh = hankel_forward(u);
    const auto oracle = SpectralProfile::sample(g, [](double xi) { return std::exp(-pi * xi * xi); });
    CHECK(relative_l2_error(uh, oracle) < 1e-6);
    const double w = 2.0;
    const SpectralProfile vh = hankel_forward(gaussian(g, w));
    const auto voracle = SpectralProfile::sample(
        g, [&](double xi) { return std::pow(w, d) * std::exp(-pi * w * w * xi * xi); });
    CHECK(relative_l2_error(vh, voracle) < 1e-6);
  }
}

TEST_CASE("ball indicator transform matches the Bessel closed form") {
  // 1_B^(xi) = J_{d/2}(2 pi xi) / xi^{d/2}.
  const int d = 3;
  const auto g = grid(d, 2048);
  const SpectralProfile bh = hankel_forward(ball_indicator(g));
  for (double xi : {0.1, 0.5, 1.0, 2.7}) {
    const std::size_t i = g->nearest(xi);
    const double x = g->node(i);
    const double ref = std::cyl_bessel_j(1.5, 2 * pi * x) / std::pow(x, 1.5);
    CHECK(std::abs(bh[i] - ref) < 2e-3);
  }
}

TEST_CASE("parseval and inversion on the ring") {
  for (int d : {2, 5}) {
    const auto g = grid(d, 2048);
    const RadialProfile u = gaussian_ring(g);
    const SpectralProfile uh = hankel_forward(u);
    CHECK(lp_norm(uh, 2.0) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-5));
    CHECK(relative_l2_error(hankel_inverse(uh), u) < 1e-6);
  }
}

TEST_CASE("second derivative of the gaussian") {
  // D^2 e^{-pi r^2} = (-Laplacian / 4 pi^2) e^{-pi r^2} = (d / (2 pi) - r^2) e^{-pi r^2}.
  const int d = 5;
  const auto g = grid(d, 2048);
  const RadialProfile got = fractional_derivative(gaussian(g), 2.0);
  const auto oracle = RadialProfile::sample(
      g, [&](double r) { return (d / (2 * pi) - r * r) * std::exp(-pi * r * r); });
  CHECK(relative_l2_error(got, oracle) < 1e-6);
}

TEST_CASE("fractional derivatives compose") {
  for (int d : {2, 3, 5}) {
    const auto g = grid(d, 2048);
    const RadialProfile u = band_limited(g, 2);
    for (double s : {0.5, 1.0}) {
      const RadialProfile back = fractional_derivative(fractional_derivative(u, s), -s);
      CHECK(relative_l2_error(back, u) < 1e-8);
    }
  }
  const auto g = grid(5);
  CHECK_THROWS_AS(fractional_derivative(gaussian(g), -5.0), ParameterError);
}

TEST_CASE("sobolev norm of the gaussian") {
  // ||D^s G||^2 = |S^{d-1}| int xi^{2s + d - 1} e^{-2 pi xi^2} = |S^{d-1}| Gamma(s + d/2) / (2 (2 pi)^{s + d/2}).
  const int d = 5;
  const auto g = grid(d, 2048);
  for (double s : {0.5, 1.0, 2.5, 3.0}) {
    const double ref = std::sqrt(Convention::sphere_area(d) * std::tgamma(s + 0.5 * d) /
                                 (2.0 * std::pow(2 * pi, s + 0.5 * d)));
    CHECK(sobolev_norm(gaussian(g), s) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("riesz constant and spectral potential at the origin") {
  // (|x|^{-alpha} * G)(0) = |S^{d-1}| Gamma((d - alpha)/2) / (2 pi^{(d - alpha)/2}).
  const int d = 5;
  const auto g = grid(d, 2048);
  for (double alpha : {2.6, 3.0, 4.0}) {
    const double ref = Convention::sphere_area(d) * std::tgamma(0.5 * (d - alpha)) /
                       (2.0 * std::pow(pi, 0.5 * (d - alpha)));
    const RadialProfile v = riesz_potential_spectral(gaussian(g), alpha);
    CHECK(v[0] == doctest::Approx(ref).epsilon(1e-5));
    CHECK(riesz_potential_direct_origin(gaussian(g), alpha) == doctest::Approx(ref).epsilon(1e-8));
    CHECK(Convention::riesz_constant(alpha, d) != doctest::Approx(Convention::riesz_constant_alternative(alpha, d)));
  }
}

TEST_CASE("direct and spectral riesz potentials agree") {
  const int d = 5;
  const auto g = grid(d, 1024);
  const RadialProfile u = gaussian(g);
  const double alpha = 2.6;
  CHECK(relative_l2_error(riesz_potential_direct(u, alpha), riesz_potential_spectral(u, alpha)) < 1e-3);
}

TEST_CASE("angular factor at tau = 0 is the sphere area") {
  for (int d : {3, 5}) {
    CHECK(riesz_angular_factor(0.0, 1.5, d) == doctest::Approx(Convention::sphere_area(d)).epsilon(1e-12));
    CHECK(angular_kernel(0.0, 0.0, d + 0.5, d) == doctest::Approx(Convention::sphere_area(d)).epsilon(1e-12));
  }
}

TEST_CASE("ball origin value") {
  const int d = 5;
  const auto g = grid(d, 2048);
  for (double alpha : {2.6, 3.5}) {
    const double ref = Convention::sphere_area(d) / (d - alpha);
    CHECK(riesz_potential_direct_origin(ball_indicator(g), alpha) == doctest::Approx(ref).epsilon(1e-4));
  }
}

TEST_CASE("superlevel measure of the gaussian and monotonicity") {
  const int d = 3;
  const auto g = grid(d, 2048);
  const RadialProfile u = gaussian(g);
  double prev = INFINITY;
  for (double eta = 0.01; eta < 1.0; eta += 0.01) {
    const double m = superlevel_measure(u, eta);
    const double rad = std::sqrt(-std::log(eta) / pi);
    CHECK(m == doctest::Approx(ball_volume(d) * std::pow(rad, d)).epsilon(5e-4));
    CHECK(m <= prev);
    prev = m;
  }
  CHECK(superlevel_measure(u, 1.0) == 0.0);
}

TEST_CASE("normalization reaches unit norms") {
  const auto g = grid(5, 2048);
  const Normalization n = normalize_to_unit(gaussian(g), 3.0, 1.0);
  CHECK(sobolev_norm(n.u, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(riesz_norm(n.u, 3.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(n.lambda > 0.0);
  CHECK(n.mu > 0.0);
}
