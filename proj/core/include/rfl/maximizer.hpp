#pragma once

#include <cstdint>
#include <vector>

#include "rfl/exponents.hpp"
#include "rfl/profile.hpp"

namespace rfl {

struct AscentConfig {
  double step_size = 1.0;
  int max_iters = 5000;
  double tol = 1e-10;  // relative ratio change over a window of 50 accepted steps
  int restarts = 1;
  std::uint64_t seed = 7;
  int memory = 10;  // quasi-Newton pairs
  double noise_sigma = 0.3;
};

struct RestartRecord {
  std::uint64_t seed = 0;
  double c_hat = 0.0;
  int iters = 0;
  bool converged = false;
};

struct MaximizerResult {
  ParamSet params;
  double c_hat = 0.0;
  std::vector<double> history;  // ratio after each accepted step of the winning restart
  RadialProfile u_star;
  double gradient_check = 0.0;  // worst FD mismatch seen, on the scale sum |g_i v_i|
  bool converged = false;
  int iters = 0;
  std::uint64_t seed = 0;
  std::vector<RestartRecord> restarts;
  GridMeta grid_meta;
};

/// ||u|| / (||D^{-r} u||^{1-r/S} ||D^{S-r} u||^{r/S}), all three norms from
/// one forward transform and the same spectral quadrature, so the discrete
/// value obeys Hoelder exactly. Requires u >= 0, u != 0.
double weinstein_ratio(const RadialProfile& u, const ParamSet& ps);

/// G with  d/de log W(u + e v) = |S^{d-1}| sum_i w_i G_i v_i  (grid weights w).
RadialProfile weinstein_gradient(const RadialProfile& u, const ParamSet& ps);

/// Directional derivative of log W along v using weinstein_gradient.
double weinstein_directional(const RadialProfile& u, const RadialProfile& v, const ParamSet& ps);

RadialProfile project_nonnegative(const RadialProfile& u);

/// Projected quasi-Newton ascent on log W over {u >= 0}; best over restarts.
MaximizerResult maximize_constrained(const ParamSet& ps, const AscentConfig& cfg = {},
                                     GridPtr grid = nullptr);

/// Closed-form ratio for the frequency annulus 1 - 1/n < |xi| < 1 + 1/n.
double annulus_ratio(int n, const ParamSet& ps);

/// Sign changes of the physical D^r phi_n on a uniform grid of (0, x_max].
int annulus_sign_changes(int n, const ParamSet& ps, double x_max = 20.0, int samples = 2000);

/// min_c || f - c g || / ||f|| with f = |phi^|^{2-2r/S}, g = |xi|^{2r} |phi^|^{2r/S},
/// phi^ = |xi|^{-r} u^, in L^2 of the spectral grid measure.
double holder_proportionality_defect(const RadialProfile& u, const ParamSet& ps);

/// Nonnegative test profiles for oracle searches: sums of bumps, compact
/// polynomial caps and algebraic tails with multiplicative noise.
RadialProfile random_cone_profile(const GridPtr& grid, std::uint64_t seed);

struct RandomSearchResult {
  double best = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;  // profiles rejected by the spectral tail checks
};

RandomSearchResult random_search(const ParamSet& ps, std::size_t samples, std::uint64_t seed,
                                 GridPtr grid = nullptr);

}  // namespace rfl
