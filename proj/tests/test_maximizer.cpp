#include <cmath>
#include <limits>

#include "doctest.h"
#include "rfl/corpus.hpp"
#include "rfl/error.hpp"
#include "rfl/exponents.hpp"
#include "rfl/grid.hpp"
#include "rfl/maximizer.hpp"
#include "rfl/report.hpp"

using namespace rfl;

namespace {

const ParamSet kPs = validate_params(5, 2.0, 3.0);

// int_{1-1/n}^{1+1/n} xi^{k+d-1} dxi.
double annulus_moment(int n, double k, int d) {
  const double e = k + d;
  return (std::pow(1.0 + 1.0 / n, e) - std::pow(1.0 - 1.0 / n, e)) / e;
}

}  // namespace

TEST_CASE("weinstein ratio stays below one and ignores amplitude") {
  const auto g = RadialGrid::standard(5, 1024);
  for (double w : {0.5, 1.0, 2.0}) {
    const RadialProfile u = gaussian(g, w);
    const double W = weinstein_ratio(u, kPs);
    CHECK(W > 0.0);
    CHECK(W < 1.0);
    CHECK(weinstein_ratio(3.7 * u, kPs) == doctest::Approx(W).epsilon(1e-13));
  }
  CHECK_THROWS_AS(weinstein_ratio(RadialProfile::zeros(g), kPs), std::exception);
}

TEST_CASE("weinstein ratio is dilation invariant") {
  const auto g = RadialGrid::standard(5, 1024);
  const RadialProfile u = gaussian_ring(g, 1.0, 0.3);
  const double lambda = std::exp(10.0 * g->log_step());  // exact shift by ten nodes
  CHECK(weinstein_ratio(dilate(u, lambda), kPs) == doctest::Approx(weinstein_ratio(u, kPs)).epsilon(1e-8));
}

TEST_CASE("gradient matches a central difference") {
  const auto g = RadialGrid::standard(5, 512);
  const RadialProfile u = gaussian_ring(g, 0.8, 0.4) + 0.5 * gaussian(g);
  const RadialProfile v = gaussian(g, 0.7).times([](double r) { return std::cos(3.0 * r); });
  const double an = weinstein_directional(u, v, kPs);
  const double eps = 1e-5;
  const double fd = (std::log(weinstein_ratio(u + eps * v, kPs)) -
                     std::log(weinstein_ratio(u - eps * v, kPs))) / (2 * eps);
  CHECK(an == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("annulus ratio against its power-integral closed form") {
  const int d = kPs.d;
  double prev = 0.0;
  for (int n : {2, 8, 32, 128}) {
    const double a0 = annulus_moment(n, 0.0, d);
    const double ar = annulus_moment(n, 2 * kPs.r, d);
    const double aS = annulus_moment(n, 2 * kPs.S, d);
    const double ref = std::sqrt(ar) / (std::pow(a0, 0.5 * (1 - kPs.r / kPs.S)) * std::pow(aS, 0.5 * kPs.r / kPs.S));
    const double got = annulus_ratio(n, kPs);
    CHECK(got == doctest::Approx(ref).epsilon(1e-12));
    CHECK(got > prev);
    CHECK(got < 1.0);
    prev = got;
  }
  CHECK(prev > 0.99);
  CHECK(annulus_sign_changes(8, kPs) > 0);
}

TEST_CASE("projection and random cone profiles") {
  const auto g = RadialGrid::standard(5, 512);
  const RadialProfile p = project_nonnegative(gaussian(g) - 0.5 * gaussian(g, 2.0));
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] >= 0.0);
  const RadialProfile a = random_cone_profile(g, 42);
  const RadialProfile b = random_cone_profile(g, 42);
  CHECK(a.vec() == b.vec());
  CHECK(a.max_abs() > 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] >= 0.0);
  CHECK(holder_proportionality_defect(gaussian(g), kPs) >= 0.0);
}

TEST_CASE("short constrained ascent improves on the gaussian") {
  const auto g = RadialGrid::standard(5, 512);
  AscentConfig cfg;
  cfg.max_iters = 150;
  cfg.restarts = 2;
  const MaximizerResult res = maximize_constrained(kPs, cfg, g);
  CHECK(res.c_hat < 1.0);
  CHECK(res.c_hat >= weinstein_ratio(gaussian(g), kPs));
  CHECK(res.restarts.size() == 2);
  for (std::size_t i = 1; i < res.history.size(); ++i) CHECK(res.history[i] >= res.history[i - 1]);
  CHECK(res.history.back() == res.c_hat);
  for (std::size_t i = 0; i < res.u_star.size(); ++i) CHECK(res.u_star[i] >= 0.0);
  const MaximizerResult again = maximize_constrained(kPs, cfg, g);
  CHECK(again.c_hat == res.c_hat);
}

TEST_CASE("json records") {
  const Json p = to_json(kPs);
  CHECK(p["d"] == 5);
  CHECK(p["alpha"].get<double>() == 3.0);
  DecayFit fit;
  fit.below_floor = true;
  fit.sigma_hat = std::numeric_limits<double>::infinity();
  CHECK(to_json(fit)["sigma_hat"] == "inf");
  const Json c = convention_record(5, 3.0);
  CHECK(c["in_force"] == "riesz_constant");
  CHECK(c["riesz_constant"].is_number());
  CHECK(convention_record(5, 6.0)["riesz_constant"].is_null());
  const Json rep = to_json(make_exponent_report(kPs));
  CHECK(rep.dump().find("NaN") == std::string::npos);
}
