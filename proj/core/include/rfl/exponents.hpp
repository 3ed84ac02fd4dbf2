#pragma once

#include <optional>

namespace rfl {

/// Validated parameter set for the radial Riesz functional.
/// alpha = d - r is the kernel exponent and s = S - r the smoothness index.
struct ParamSet {
  int d = 0;
  double r = 0.0;
  double S = 0.0;
  double alpha = 0.0;
  double s = 0.0;
};

/// Checks d >= 2, 1/2 < r < d/2 and r < S - 1/2. Throws ParameterError.
ParamSet validate_params(int d, double r, double S);

/// Same ranges expressed through (alpha, s): d/2 < alpha < d - 1/2, s > 1/2.
ParamSet params_from_alpha(int d, double alpha, double s);

/// Lower endpoint of the admissible p-range for radial data.
double lower_endpoint_p0(const ParamSet& ps);

/// The same endpoint written in (d, alpha, s) variables.
double lower_endpoint_prad(int d, double alpha, double s);

struct PInterval {
  double lower = 0.0;              // excluded
  std::optional<double> upper;     // included; empty means unbounded
  bool contains(double p) const;
};

PInterval admissible_p_range(const ParamSet& ps);

/// Interpolation exponent fixed by scaling: 1/p = 1/2 + (r - theta S)/d.
/// Throws ParameterError if p is outside the admissible range.
double theta_from_scaling(const ParamSet& ps, double p);

/// Scaling identity in (alpha, s) form, solved for theta. Used as a
/// cross-check of theta_from_scaling.
double theta_alpha_form(int d, double alpha, double s, double p);

struct SigmaResult {
  double delta = 0.0;
  double sigma = 0.0;        // decay exponent for this delta
  double sigma_lower = 0.0;  // infimum over admissible delta (excluded)
  double sigma_upper = 0.0;  // value at delta = 0 (excluded)
};

/// Pointwise decay exponent of normalized functions. Requires 0 < delta < d - alpha.
SigmaResult sigma_of_delta(const ParamSet& ps, double delta);

/// Default delta: 1e-6 (d - alpha).
double default_delta(const ParamSet& ps);

struct ExponentReport {
  ParamSet params;
  double p0 = 0.0;
  PInterval range;
  double theta_lower = 0.0;  // theta at p -> p0
  double theta_upper = 1.0;  // theta at the upper endpoint (1 when bounded)
  SigmaResult sigma;
};

ExponentReport make_exponent_report(const ParamSet& ps, std::optional<double> delta = {});

/// Closed form of p0 along d = 5, r = 2: (16 S - 30) / (14 S - 27).
double p0_closed_form_d5_r2(double S);

}  // namespace rfl
