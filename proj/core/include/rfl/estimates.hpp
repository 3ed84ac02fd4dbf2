#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rfl/profile.hpp"

namespace rfl {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1,
/// e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) in between.
double smooth_bridge(double t);

/// Radial frequency cutoff: 1 on |xi| <= 1, 0 on |xi| >= 2.
struct MollifierSpec {
  double operator()(double xi) const { return 1.0 - smooth_bridge(xi - 1.0); }
};

/// Physical cutoff theta_rho(x) = theta(x / rho), theta = 1 on B_1, 0 outside B_2.
struct CutoffSpec {
  double rho = 1.0;
  double operator()(double r) const { return 1.0 - smooth_bridge(r / rho - 1.0); }
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct ProbeSample {
  double param = 0.0;
  double ratio = 0.0;
};

struct BoundProbeReport {
  std::string probe;
  NamedValues params;
  std::vector<ProbeSample> samples;
  double sup_ratio = 0.0;
  bool passed = false;
  bool degenerate = false;
  NamedValues thresholds;
  NamedValues metrics;  // derived quantities such as fitted slopes
};

struct DecayFit {
  double sigma_hat = 0.0;
  double c_hat = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual = 0.0;
  std::size_t points = 0;
  std::size_t sign_changes = 0;
  bool power_law_regime = false;  // residual below kResidualCap
  bool below_floor = false;       // |u| under the floor on the window: sigma_hat = +inf
};

inline constexpr double kResidualCap = 0.1;
inline constexpr double kSlopeTolerance = 0.15;
inline constexpr double kFlatnessFactor = 4.0;
inline constexpr double kStability = 0.2;

struct FrequencySplit {
  RadialProfile low;
  RadialProfile high;
};

/// low = psi_R * u with psi_R^(xi) = psi^(R xi); high = u - low.
FrequencySplit frequency_split(const RadialProfile& u, double R, const MollifierSpec& psi = {});

/// sup_{window} |h(x)| x^{(d-1)/2} / (R^{s-1/2} ||u||_{H^s}) for one R.
double high_freq_ratio(const RadialProfile& u, double s, double R, std::pair<double, double> window);

/// sup_{window} |h(x)| x^{(d-1)/2} without normalization.
double high_freq_sup(const RadialProfile& u, double R, std::pair<double, double> window);
double high_freq_sup(const SpectralProfile& uh, double R, std::pair<double, double> window);

/// Ratio over an R ladder. Metric "r_slope" is the log-log slope of the
/// unnormalized sup against R; passed means finite ratios within +-20% of
/// their geometric mean.
BoundProbeReport high_freq_decay_probe(const RadialProfile& u, double s,
                                       const std::vector<double>& R_values,
                                       std::pair<double, double> window);

/// Same probe for a profile given by its spectrum; the norm is taken
/// directly from the samples.
BoundProbeReport high_freq_decay_probe(const SpectralProfile& uh, double s,
                                       const std::vector<double>& R_values,
                                       std::pair<double, double> window);

/// Ordinary least squares of log|u| against log r on the window nodes where
/// |u| exceeds 1e-14 max|u|. The window must hold at least 12 nodes. When
/// fewer than 12 nodes clear the floor the profile decays faster than any
/// power the samples can resolve: sigma_hat = +inf and below_floor is set.
DecayFit tail_decay_fit(const RadialProfile& u, std::pair<double, double> window);

enum class Side { inner, outer };

/// |S^{d-1}| int over (R, inf) or (0, R) of |u| r^{d-1-gamma_w} dr.
double weighted_tail_integral(const RadialProfile& u, double gamma_w, double R, Side side);

struct ScalingProbe {
  BoundProbeReport exterior;  // R^delta int_{|x|>R} |u| |x|^{-(alpha - d/q + delta)} / norm
  BoundProbeReport interior;  // R^{-delta} int_{|x|<R} |u| |x|^{-(alpha - d/q - delta)} / norm
};

/// Default ladder 2^{-3}, ..., 2^{6}. When reference_sup > 0 a curve passes
/// if its sup is finite and at most kFlatnessFactor * reference_sup.
ScalingProbe scaling_invariance_probe(const RadialProfile& u, double alpha, double delta, double q,
                                      const std::vector<double>& ladder = {},
                                      double reference_exterior = 0.0,
                                      double reference_interior = 0.0);

std::vector<double> dyadic_ladder(int lo_exp, int hi_exp);

/// int_0^inf (avg_{B_rho}|u|)^q rho^{(d-alpha)q+d-1} drho against
/// || |x|^{-alpha} * |u| ||_q^q; balls centred at the origin.
BoundProbeReport ball_average_probe(const RadialProfile& u, double alpha, double q);

/// Piecewise power weight w(rho) = rho^{-kappa} on one side of R.
struct WeightSpec {
  Side side = Side::outer;
  double kappa = 0.0;
  double R = 1.0;
  double scale = 1.0;  // w multiplied by this constant (0 gives w = 0)

  /// w = rho^{-(alpha - d/q + 1 + delta)} on rho > R.
  static WeightSpec exterior(double alpha, int d, double q, double delta, double R);
  /// w = rho^{-(alpha - d/q + 1 - delta)} on rho < R.
  static WeightSpec interior(double alpha, int d, double q, double delta, double R);

  /// W(rho) = int_rho^inf w.
  double primitive(double rho) const;
};

/// |S^{d-1}| int |u| W(r) r^{d-1} dr against || |x|^{-alpha} * |u| ||_q.
BoundProbeReport weighted_w_probe(const RadialProfile& u, const WeightSpec& w, double alpha, double q);

/// |S^{d-1}| int |u| r^{d-1-(alpha - d/2 + delta)} dr, requires 0 < delta < d - alpha.
double weighted_decay_integral(const RadialProfile& u, double alpha, double delta);

/// sup over x of |int f(|y|) (1 + |x - y|^2)^{-gamma/2} dy| x^{d-1+b} / || |y|^b f ||_1.
BoundProbeReport dn1_kernel_probe(const RadialProfile& f, double gamma, double b,
                                  const std::vector<double>& x_samples = {});

/// || |y|^b f ||_{L^1}.
double power_weighted_l1(const RadialProfile& f, double b);

/// || theta_rho D^r phi - D^r(theta_rho phi) ||_2.
double commutator_residual(const RadialProfile& phi, double r, double rho, const CutoffSpec& theta);

struct TailMass {
  double interior_sq = 0.0;  // ||D^r phi||^2 on |x| < rho
  double exterior_sq = 0.0;  // ||D^r phi||^2 on |x| > rho
  double total_sq = 0.0;
};

TailMass tail_mass_split(const RadialProfile& phi, double r, double rho);

/// ||D^r phi||_{L^2(|x| > rho)}.
double exterior_tail_mass(const RadialProfile& phi, double r, double rho);

/// Level eta and measure c such that every f with ||f||_p^p <= a0,
/// ||f||_q^q >= b0 and ||f||_rho^rho <= g0 has |{|f| > eta}| >= c.
struct PqrThreshold {
  double eta = 0.0;
  double c = 0.0;
};

PqrThreshold pqr_threshold(double p, double q, double rho, double a0, double b0, double g0);

/// Ordinary least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rfl
