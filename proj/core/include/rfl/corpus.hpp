#pragma once

#include <string>
#include <vector>

#include "rfl/profile.hpp"

namespace rfl {

/// e^{-pi (r / width)^2}; width 1 is the transform's fixed point.
RadialProfile gaussian(const GridPtr& g, double width = 1.0);

/// Indicator of the ball of given radius, taking the midpoint value 1/2 on a
/// node that sits exactly at the radius.
RadialProfile ball_indicator(const GridPtr& g, double radius = 1.0);

/// e^{-((r - center) / width)^2}.
RadialProfile gaussian_ring(const GridPtr& g, double center = 1.0, double width = 0.25);

/// (1 + r^2)^{-beta/2}.
RadialProfile power_tail_bump(const GridPtr& g, double beta);

/// Frequency-annulus indicator of [lo, hi] convolved in |xi| with a Gaussian
/// of standard deviation `scale`:
///   (erf((xi - lo)/(sqrt2 scale)) - erf((xi - hi)/(sqrt2 scale))) / 2.
/// The physical profile is set to zero where the smoothing envelope
/// exp(-2 pi^2 scale^2 r^2) is below 1e-16.
SpectralProfile smoothed_annulus_spectrum(const GridPtr& g, double lo = 1.0, double hi = 2.0,
                                          double scale = 0.05);
RadialProfile smoothed_annulus(const GridPtr& g, double lo = 1.0, double hi = 2.0,
                               double scale = 0.05);

/// xi^{2k} e^{-pi xi^2} and its physical counterpart.
SpectralProfile gaussian_moment_spectrum(const GridPtr& g, int k, double width = 1.0);
RadialProfile band_limited(const GridPtr& g, int k, double width = 1.0);

/// (1 + (xi/xi_c)^2)^{-beta/2}: a spectrum that only just has the
/// smoothness its decay rate allows.
SpectralProfile power_spectrum(const GridPtr& g, double beta, double xi_c);
RadialProfile power_spectrum_profile(const GridPtr& g, double beta, double xi_c);

/// Built-in names accepted by named_profile: gaussian, ball, ring,
/// power-tail, smoothed-annulus.
const std::vector<std::string>& named_profile_names();
RadialProfile named_profile(const std::string& name, const GridPtr& g);

}  // namespace rfl
