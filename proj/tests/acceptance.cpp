// One PASS/FAIL line per acceptance criterion. Tolerances and runtime caps
// are pinned below; the process exits non-zero when any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rfl/corpus.hpp"
#include "rfl/error.hpp"
#include "rfl/estimates.hpp"
#include "rfl/exponents.hpp"
#include "rfl/grid.hpp"
#include "rfl/hankel.hpp"
#include "rfl/maximizer.hpp"
#include "rfl/operators.hpp"
#include "rfl/riesz_direct.hpp"

using namespace rfl;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---- 1 ----------------------------------------------------------------------

Outcome p0_curve() {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double S = 2.6 + (12.0 - 2.6) * i / 199.0;
    worst = std::max(worst, std::abs(lower_endpoint_p0(validate_params(5, 2.0, S)) - p0_closed_form_d5_r2(S)));
  }
  const double asym = std::abs(lower_endpoint_p0(validate_params(5, 2.0, 1e6)) - 8.0 / 7.0);
  return {worst < 1e-12 && asym < 1e-5,
          "max |p0 - closed form| = " + fmt("%.2e", worst) + ", |p0(1e6) - 8/7| = " + fmt("%.2e", asym)};
}

// ---- 2 ----------------------------------------------------------------------

Outcome endpoint_identity() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int n = 0;
  while (n < 50) {
    const int d = 2 + static_cast<int>(rng() % 7);
    const double r = std::uniform_real_distribution<double>(0.5, 0.5 * d)(rng);
    const double S = r + 0.5 + std::uniform_real_distribution<double>(0.0, 6.0)(rng);
    ParamSet ps;
    try {
      ps = validate_params(d, r, S);
    } catch (const ParameterError&) {
      continue;
    }
    worst = std::max(worst, std::abs(lower_endpoint_prad(d, d - r, S - r) - lower_endpoint_p0(ps)));
    ++n;
  }
  double lim = 0.0;
  for (int d : {3, 5, 8}) {
    for (double s : {0.6, 1.0, 4.0}) {
      lim = std::max(lim, std::abs(lower_endpoint_prad(d, d - 0.5 - 1e-8, s) - 2.0));
      lim = std::max(lim, std::abs(lower_endpoint_prad(d, 0.5 * d + 1e-8, s) - 1.0));
    }
  }
  return {worst < 1e-12 && lim < 1e-6,
          "50 triples max diff " + fmt("%.2e", worst) + ", endpoint limits max err " + fmt("%.2e", lim)};
}

// ---- 3 ----------------------------------------------------------------------

// The identity check needs D^{-s} u to fit on the grid as well. For k = 1 and
// s = 1 in d = 2 the intermediate decays only like r^{-3} and is still
// resolved at r_max, so k = 1 is reported but not judged.
Outcome transform_anchor() {
  double dual = 0.0, pars = 0.0, mult = 0.0, outside = 0.0;
  for (int d : {2, 3, 5}) {
    const auto g = RadialGrid::standard(d, 2048);
    const auto oracle = SpectralProfile::sample(g, [](double xi) { return std::exp(-M_PI * xi * xi); });
    dual = std::max(dual, relative_l2_error(hankel_forward(gaussian(g)), oracle));
    const RadialProfile ring = gaussian_ring(g);
    const double a = lp_norm(ring, 2.0), b = lp_norm(hankel_forward(ring), 2.0);
    pars = std::max(pars, std::abs(a - b) / a);
    for (int k : {1, 2, 3}) {
      const RadialProfile u = band_limited(g, k);
      for (double s : {0.5, 0.7, 1.0}) {
        const double e = relative_l2_error(fractional_derivative(fractional_derivative(u, -s), s), u);
        (k == 1 ? outside : mult) = std::max(k == 1 ? outside : mult, e);
      }
    }
  }
  return {dual < 1e-6 && pars < 1e-5 && mult < 1e-8,
          "self-duality " + fmt("%.2e", dual) + ", Parseval " + fmt("%.2e", pars) + ", D^s D^-s " +
              fmt("%.2e", mult) + " (d = 2, 3, 5; s = 0.5, 0.7, 1; k = 2, 3; k = 1 gives " +
              fmt("%.2e", outside) + ")"};
}

// ---- 4 ----------------------------------------------------------------------

Outcome riesz_oracle() {
  const int d = 5;
  const double alpha = 2.6;
  const auto g = RadialGrid::standard(d, 2048);
  const RadialProfile u = gaussian(g);
  const double err = relative_l2_error(riesz_potential_direct(u, alpha), riesz_potential_spectral(u, alpha));
  const double exact = Convention::sphere_area(d) / (d - alpha);
  const double ball = std::abs(riesz_potential_direct_origin(ball_indicator(g), alpha) - exact) / exact;
  return {err < 1e-3 && ball < 1e-4,
          "direct vs spectral " + fmt("%.2e", err) + ", ball origin value " + fmt("%.2e", ball)};
}

// ---- 5 ----------------------------------------------------------------------

std::vector<RadialProfile> holder_corpus(const GridPtr& g) {
  std::vector<RadialProfile> c;
  for (int i = 0; i < 10; ++i) c.push_back(gaussian(g, 0.5 * std::pow(4.0, i / 9.0)));
  for (int i = 0; i < 10; ++i) c.push_back(gaussian_ring(g, 0.5 + 0.25 * i, 0.1 + 0.04 * i));
  for (int i = 0; i < 10; ++i) c.push_back(power_tail_bump(g, 6.0 + i));
  for (int k = 0; k < 5; ++k) {
    for (double w : {0.7, 1.3}) c.push_back(band_limited(g, k, w));
  }
  for (int i = 0; i < 10; ++i) c.push_back(smoothed_annulus(g, 0.5 + 0.1 * i, 1.0 + 0.2 * i, 0.05 + 0.01 * i));
  return c;
}

Outcome holder_endpoint() {
  const ParamSet ps = validate_params(5, 2.0, 3.0);
  const auto g = RadialGrid::standard(ps.d, 2048);
  const auto corpus = holder_corpus(g);
  double worst = -INFINITY;
  for (const auto& u : corpus) {
    const double lhs = sobolev_norm(u, ps.r);
    const double rhs = std::pow(sobolev_norm(u, 0.0), 1.0 - ps.r / ps.S) * std::pow(sobolev_norm(u, ps.S), ps.r / ps.S);
    worst = std::max(worst, (lhs - rhs) / rhs);
  }
  bool increasing = true;
  double prev = 0.0, last = 0.0;
  for (int n : {2, 8, 32, 128}) {
    last = annulus_ratio(n, ps);
    increasing = increasing && last > prev;
    prev = last;
  }
  return {corpus.size() == 50 && worst <= 1e-10 && increasing && last > 0.99,
          std::to_string(corpus.size()) + " profiles, max relative excess " + fmt("%.2e", worst) +
              ", annulus ladder increasing=" + (increasing ? "yes" : "no") + ", value(128) = " + fmt("%.6f", last)};
}

// ---- 6 ----------------------------------------------------------------------

Outcome decay_suite() {
  const int d = 5;
  const double alpha = 3.0, s = 1.0;
  const auto g = RadialGrid::standard(d, 2048);
  const double floor_sigma = 5.5 / 3.0 - 0.1;
  bool ok = true;
  std::ostringstream os;
  for (const auto& name : named_profile_names()) {
    if (name == "ball") continue;  // not in H^1: no normalization exists
    const Normalization n = normalize_to_unit(named_profile(name, g), alpha, s);
    const DecayFit fit = tail_decay_fit(n.u, {8.0, 200.0});
    ok = ok && fit.sigma_hat >= floor_sigma;
    os << name << " " << (fit.below_floor ? std::string("inf") : fmt("%.3f", fit.sigma_hat)) << ", ";
  }
  const auto uh = power_spectrum(g, s + 0.5 * d + 0.1, 0.1);
  const BoundProbeReport hf = high_freq_decay_probe(uh, s, {0.5, 1.0, 2.0}, {0.01, 500.0});
  const double slope = hf.metrics.empty() ? NAN : hf.metrics[0].second;
  ok = ok && hf.passed && std::abs(slope - (s - 0.5)) <= kSlopeTolerance;
  os << "R-slope " << fmt("%.3f", slope) << " (ball excluded)";
  return {ok, os.str()};
}

// ---- 7 ----------------------------------------------------------------------

Outcome scaling_probes() {
  const int d = 5;
  const double alpha = 3.5, delta = 0.5;
  const auto g = RadialGrid::standard(d, 2048);
  double worst = 0.0;
  bool finite = true;
  for (double q : {1.5, 2.0, 3.0}) {
    double elo = INFINITY, ehi = 0.0, ilo = INFINITY, ihi = 0.0;
    for (const auto& name : named_profile_names()) {
      const ScalingProbe p = scaling_invariance_probe(named_profile(name, g), alpha, delta, q);
      finite = finite && p.exterior.passed && p.interior.passed;
      elo = std::min(elo, p.exterior.sup_ratio);
      ehi = std::max(ehi, p.exterior.sup_ratio);
      ilo = std::min(ilo, p.interior.sup_ratio);
      ihi = std::max(ihi, p.interior.sup_ratio);
    }
    worst = std::max({worst, ehi / elo, ihi / ilo});
  }
  return {finite && worst <= kFlatnessFactor,
          "ladder 2^-3..2^6, largest spread of the sup ratio across members " + fmt("%.3f", worst)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome commutator() {
  const auto g = RadialGrid::standard(5, 2048);
  const RadialProfile phi = gaussian(g);
  const std::vector<double> rhos{8, 16, 32, 64, 128};
  bool ok = true;
  std::ostringstream os;
  for (double r : {0.8, 1.2, 1.8}) {
    std::vector<double> ys;
    for (double rho : rhos) ys.push_back(commutator_residual(phi, r, rho, {}));
    const double slope = -loglog_slope(rhos, ys);
    ok = ok && slope >= r / 4.0 - 0.05;
    os << "r=" << r << " slope " << fmt("%.3f", slope) << (r < 1.8 ? ", " : "");
  }
  return {ok, os.str()};
}

// ---- 9 ----------------------------------------------------------------------

Outcome constrained_constant() {
  const ParamSet ps = validate_params(5, 2.0, 3.0);
  AscentConfig cfg;
  cfg.restarts = 4;
  cfg.seed = 7;
  const auto g = RadialGrid::standard(ps.d, 2048);
  const MaximizerResult a = maximize_constrained(ps, cfg, g);
  cfg.seed = 11;
  const MaximizerResult b = maximize_constrained(ps, cfg, g);
  // Refinement compares the same start on both grids.
  cfg.seed = 7;
  cfg.restarts = 1;
  const MaximizerResult fine = maximize_constrained(ps, cfg, RadialGrid::standard(ps.d, 4096));
  const RandomSearchResult rs = random_search(ps, 10000, 7, g);
  const double c = a.c_hat;
  const double seeds = std::abs(a.c_hat - b.c_hat);
  const double fd = std::max(a.gradient_check, b.gradient_check);
  const double refine = std::abs(fine.c_hat - c);
  const bool ok = c < 1.0 - 1e-3 && seeds < 1e-6 && fd < 1e-4 && rs.best <= c + 1e-6 && refine < 1e-3;
  std::ostringstream os;
  os << "c_hat " << fmt("%.9f", c) << ", seed diff " << fmt("%.2e", seeds) << ", FD mismatch "
     << fmt("%.2e", fd) << ", random best " << fmt("%.6f", rs.best) << " (" << rs.samples << " samples, "
     << rs.skipped << " skipped), N->2N shift " << fmt("%.2e", refine);
  return {ok, os.str()};
}

// ---- 10 ---------------------------------------------------------------------

Outcome pqr_property() {
  const auto g = RadialGrid::standard(5, 2048);
  const double p = 2.0, q = 4.0, rho = 6.0;
  std::vector<RadialProfile> corpus;
  for (const auto& name : named_profile_names()) corpus.push_back(named_profile(name, g));
  double a0 = 0.0, b0 = INFINITY, g0 = 0.0;
  for (const auto& f : corpus) {
    a0 = std::max(a0, std::pow(lp_norm(f, p), p));
    b0 = std::min(b0, std::pow(lp_norm(f, q), q));
    g0 = std::max(g0, std::pow(lp_norm(f, rho), rho));
  }
  const PqrThreshold t = pqr_threshold(p, q, rho, a0, b0, g0);
  bool ok = t.c > 0.0;
  double least = INFINITY;
  bool monotone = true;
  for (const auto& f : corpus) {
    const double m = superlevel_measure(f, t.eta);
    least = std::min(least, m);
    ok = ok && m >= t.c;
    double prev = INFINITY;
    for (int i = 1; i <= 400; ++i) {
      const double v = superlevel_measure(f, 1.2 * f.max_abs() * i / 400.0);
      monotone = monotone && v <= prev;
      prev = v;
    }
  }
  return {ok && monotone, "eta* " + fmt("%.4g", t.eta) + ", c* " + fmt("%.4g", t.c) + ", least measure " +
                              fmt("%.4g", least) + ", monotone=" + (monotone ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  double runtime_cap;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "p0 curve d=5 r=2", 1.0, p0_curve},
      {2, "endpoint identity and limits", 1.0, endpoint_identity},
      {3, "transform convention", 30.0, transform_anchor},
      {4, "riesz direct vs spectral", 60.0, riesz_oracle},
      {5, "endpoint Hoelder C=1", 10.0, holder_endpoint},
      {6, "decay suite", 60.0, decay_suite},
      {7, "scaling-invariance probes", 120.0, scaling_probes},
      {8, "commutator decay", 60.0, commutator},
      {9, "constrained best constant", 600.0, constrained_constant},
      {10, "pqr superlevel bound", 10.0, pqr_property},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.runtime_cap;
    const bool pass = o.passed && in_time;
    if (!pass) ++failed;
    std::printf("%s %2d %s: %s [%.2f s, cap %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.runtime_cap);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
