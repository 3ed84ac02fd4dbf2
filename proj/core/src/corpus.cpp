#include "rfl/corpus.hpp"

#include <cmath>
#include <numbers>

#include "rfl/hankel.hpp"

namespace rfl {

namespace {
constexpr double kPi = std::numbers::pi;
}

RadialProfile gaussian(const GridPtr& g, double width) {
  return RadialProfile::sample(g, [width](double r) {
    const double x = r / width;
    return std::exp(-kPi * x * x);
  });
}

RadialProfile ball_indicator(const GridPtr& g, double radius) {
  return RadialProfile::sample(g, [radius](double r) {
    if (std::abs(r - radius) <= 1e-12 * radius) return 0.5;
    return r < radius ? 1.0 : 0.0;
  });
}

RadialProfile gaussian_ring(const GridPtr& g, double center, double width) {
  return RadialProfile::sample(g, [=](double r) {
    const double x = (r - center) / width;
    return std::exp(-x * x);
  });
}

RadialProfile power_tail_bump(const GridPtr& g, double beta) {
  return RadialProfile::sample(g, [beta](double r) { return std::pow(1.0 + r * r, -0.5 * beta); });
}

SpectralProfile smoothed_annulus_spectrum(const GridPtr& g, double lo, double hi, double scale) {
  const double k = 1.0 / (std::numbers::sqrt2 * scale);
  return SpectralProfile::sample(
      g, [=](double xi) { return 0.5 * (std::erf((xi - lo) * k) - std::erf((xi - hi) * k)); });
}

RadialProfile smoothed_annulus(const GridPtr& g, double lo, double hi, double scale) {
  const RadialProfile u = hankel_inverse(smoothed_annulus_spectrum(g, lo, hi, scale));
  // Smoothing in |xi| damps the profile like exp(-2 pi^2 scale^2 r^2); past the
  // radius where that factor is 1e-16 the samples are transform noise.
  const double cut = std::sqrt(std::log(1e16) / 2.0) / (kPi * scale);
  return u.times([cut](double r) { return r <= cut ? 1.0 : 0.0; });
}

SpectralProfile gaussian_moment_spectrum(const GridPtr& g, int k, double width) {
  return SpectralProfile::sample(g, [=](double xi) {
    const double x = xi * width;
    return std::pow(x, 2 * k) * std::exp(-kPi * x * x);
  });
}

RadialProfile band_limited(const GridPtr& g, int k, double width) {
  return hankel_inverse(gaussian_moment_spectrum(g, k, width));
}

SpectralProfile power_spectrum(const GridPtr& g, double beta, double xi_c) {
  return SpectralProfile::sample(g, [=](double xi) {
    const double x = xi / xi_c;
    return std::pow(1.0 + x * x, -0.5 * beta);
  });
}

RadialProfile power_spectrum_profile(const GridPtr& g, double beta, double xi_c) {
  return hankel_inverse(power_spectrum(g, beta, xi_c));
}

const std::vector<std::string>& named_profile_names() {
  static const std::vector<std::string> names = {"gaussian", "ball", "ring", "power-tail",
                                                 "smoothed-annulus"};
  return names;
}

RadialProfile named_profile(const std::string& name, const GridPtr& g) {
  if (name == "gaussian") return gaussian(g);
  if (name == "ball") return ball_indicator(g);
  if (name == "ring") return gaussian_ring(g);
  if (name == "power-tail") return power_tail_bump(g, g->dim() + 1.0);
  if (name == "smoothed-annulus") return smoothed_annulus(g);
  std::string known;
  for (const auto& n : named_profile_names()) known += (known.empty() ? "" : ", ") + n;
  throw ParameterError("unknown profile '" + name + "' (known: " + known + ")");
}

}  // namespace rfl
