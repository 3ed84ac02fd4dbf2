#pragma once

#include <string>

#include "rfl/profile.hpp"

namespace rfl {

/// Fourier convention and the constants that depend on it.
struct Convention {
  /// u^(xi) = int u(x) exp(-2 pi i x.xi) dx, so -Laplacian <-> 4 pi^2 |xi|^2.
  static constexpr const char* fourier = "2pi-in-exponent";

  /// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
  static double sphere_area(int d);

  /// Constant in  |x|^{-alpha} * u = c(alpha, d) D^{-(d - alpha)} u  under
  /// this convention: pi^{alpha - d/2} Gamma((d - alpha)/2) / Gamma(alpha/2).
  static double riesz_constant(double alpha, int d);

  /// The alternative pi^{d/2} Gamma((d - alpha)/2) / Gamma(alpha/2), kept only
  /// so reports can state which of the two is in force.
  static double riesz_constant_alternative(double alpha, int d);

  static constexpr const char* riesz_constant_formula =
      "pi^(alpha-d/2)*Gamma((d-alpha)/2)/Gamma(alpha/2)";
};

/// xi^s u^(xi).
SpectralProfile apply_multiplier(const SpectralProfile& u_hat, double s);

/// D^s u: transform, multiply by |xi|^s, transform back. Requires s > -d.
RadialProfile fractional_derivative(const RadialProfile& u, double s);

/// c(alpha, d) D^{-(d - alpha)} u for 0 < alpha < d.
RadialProfile riesz_potential_spectral(const RadialProfile& u, double alpha);

/// (|S^{d-1}| int |u|^p r^{d-1} dr)^{1/p}; p = inf gives max |u|.
template <Space Sp>
double lp_norm(const Profile<Sp>& u, double p);

/// ||D^s u||_2 computed on the spectrum.
double sobolev_norm(const RadialProfile& u, double s);

/// (|S^{d-1}| int xi^{2s} |u^|^2 xi^{d-1} dxi)^{1/2}; negative s allowed
/// while the origin integral converges.
double spectral_sobolev_norm(const SpectralProfile& u_hat, double s);

/// || |x|^{-alpha} * |u| ||_2, measured on the spectrum. Requires d/2 < alpha < d.
double riesz_norm(const RadialProfile& u, double alpha);

/// || |x|^{-alpha} * |u| ||_q. q = 2 delegates to riesz_norm; otherwise the
/// spectral-route potential is integrated in physical space.
double riesz_lq_norm(const RadialProfile& u, double alpha, double q);

/// Lebesgue measure of {|u| > eta}, crossings located by linear interpolation.
double superlevel_measure(const RadialProfile& u, double eta);

struct Normalization {
  RadialProfile u;
  double lambda = 1.0;
  double mu = 1.0;
  double sobolev = 0.0;  // ||D^s u||_2 after normalization
  double riesz = 0.0;    // || |x|^{-alpha} * |u| ||_2 after normalization
};

/// u(x) = lambda v(mu x) with ||D^s u||_2 = || |x|^{-alpha} * |u| ||_2 = 1.
Normalization normalize_to_unit(const RadialProfile& v, double alpha, double s);

}  // namespace rfl
