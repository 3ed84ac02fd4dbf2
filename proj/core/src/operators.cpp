#include "rfl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rfl/hankel.hpp"

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double Convention::sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double Convention::riesz_constant(double alpha, int d) {
  return std::pow(kPi, alpha - 0.5 * d) * std::tgamma(0.5 * (d - alpha)) / std::tgamma(0.5 * alpha);
}

double Convention::riesz_constant_alternative(double alpha, int d) {
  return std::pow(kPi, 0.5 * d) * std::tgamma(0.5 * (d - alpha)) / std::tgamma(0.5 * alpha);
}

SpectralProfile apply_multiplier(const SpectralProfile& u_hat, double s) {
  if (s == 0.0) return u_hat;
  return u_hat.times([s](double xi) { return std::pow(xi, s); });
}

RadialProfile fractional_derivative(const RadialProfile& u, double s) {
  const int d = u.dim();
  if (!(s > -d)) throw ParameterError("s > -d violated (s=" + num(s) + ")");
  if (s == 0.0) return u;
  const auto t = HankelTransform::for_grid(u.grid_ptr());
  const auto uh = t->apply(u.values(), origin_exponent(u.grid(), u.values()));
  std::vector<double> m(uh.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = uh[i] * std::pow(u.grid().node(i), s);
  const double p = origin_exponent(u.grid(), m);
  if (m[0] != 0.0 && !(p + d > 0.0)) {
    throw NumericalError(NumericalError::Kind::Divergence,
                         "low-frequency integrand |xi|^s u^ not integrable at the origin");
  }
  return RadialProfile(u.grid_ptr(), t->apply(m, p));
}

RadialProfile riesz_potential_spectral(const RadialProfile& u, double alpha) {
  const int d = u.dim();
  if (!(alpha > 0.0) || !(alpha < d)) {
    throw ParameterError("0 < alpha < d violated (alpha=" + num(alpha) + ")");
  }
  return Convention::riesz_constant(alpha, d) * fractional_derivative(u, -(d - alpha));
}

template <Space Sp>
double lp_norm(const Profile<Sp>& u, double p) {
  if (!(p >= 1.0)) throw ParameterError("p >= 1 violated (p=" + num(p) + ")");
  if (std::isinf(p)) return u.max_abs();
  if (u.is_zero()) return 0.0;
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(std::abs(u[i]), p);
  const double integral = Convention::sphere_area(u.dim()) * integrate_radial(u.grid(), f);
  return std::pow(integral, 1.0 / p);
}

template double lp_norm(const RadialProfile&, double);
template double lp_norm(const SpectralProfile&, double);

double spectral_sobolev_norm(const SpectralProfile& u_hat, double s) {
  if (u_hat.is_zero()) return 0.0;
  const auto& g = u_hat.grid();
  std::vector<double> f(u_hat.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = std::pow(g.node(i), 2.0 * s) * u_hat[i] * u_hat[i];
  }
  if (f[0] != 0.0 && !(origin_exponent(g, f) + g.dim() > 0.25)) {
    throw NumericalError(NumericalError::Kind::Divergence,
                         "spectral integrand not integrable at the origin");
  }
  return std::sqrt(Convention::sphere_area(g.dim()) * integrate_radial(g, f));
}

namespace {

// Forward transform with the trailing run of samples under 1e-15 max|u^|
// set to zero. Past that point the samples are quadrature noise, which
// high powers of xi would otherwise turn into a non-decaying integrand.
SpectralProfile forward_above_floor(const RadialProfile& u) {
  const SpectralProfile uh = hankel_forward(u);
  const double floor = 1e-15 * uh.max_abs();
  std::size_t last = uh.size();
  while (last > 0 && std::abs(uh[last - 1]) <= floor) --last;
  if (last == uh.size()) return uh;
  std::vector<double> v = uh.vec();
  std::fill(v.begin() + static_cast<std::ptrdiff_t>(last), v.end(), 0.0);
  return SpectralProfile(uh.grid_ptr(), std::move(v));
}

}  // namespace

double sobolev_norm(const RadialProfile& u, double s) {
  if (!(s >= 0.0)) throw ParameterError("s >= 0 violated (s=" + num(s) + ")");
  return spectral_sobolev_norm(forward_above_floor(u), s);
}

double riesz_norm(const RadialProfile& u, double alpha) {
  const int d = u.dim();
  if (!(alpha > 0.5 * d) || !(alpha < d)) {
    throw ParameterError("d/2 < alpha < d violated (alpha=" + num(alpha) + ")");
  }
  return Convention::riesz_constant(alpha, d) *
         spectral_sobolev_norm(forward_above_floor(u.abs()), -(d - alpha));
}

double riesz_lq_norm(const RadialProfile& u, double alpha, double q) {
  const int d = u.dim();
  if (!(q > 1.0)) throw ParameterError("q > 1 violated (q=" + num(q) + ")");
  if (!(alpha > d / q) || !(alpha < d)) {
    throw ParameterError("d/q < alpha < d violated (alpha=" + num(alpha) + ", q=" + num(q) + ")");
  }
  if (q == 2.0) return riesz_norm(u, alpha);
  return lp_norm(riesz_potential_spectral(u.abs(), alpha), q);
}

double superlevel_measure(const RadialProfile& u, double eta) {
  if (!(eta > 0.0)) throw ParameterError("eta > 0 violated (eta=" + num(eta) + ")");
  const auto& g = u.grid();
  const int d = g.dim();
  const std::size_t n = u.size();
  auto crossing = [&](std::size_t j) {  // between nodes j and j + 1
    const double a = std::abs(u[j]), b = std::abs(u[j + 1]);
    const double f = (eta - a) / (b - a);
    return g.node(j) + f * (g.node(j + 1) - g.node(j));
  };
  double total = 0.0;
  bool inside = std::abs(u[0]) > eta;
  double r_in = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const bool next = std::abs(u[j + 1]) > eta;
    if (next == inside) continue;
    const double rc = crossing(j);
    if (next) {
      r_in = rc;
    } else {
      total += std::pow(rc, d) - std::pow(r_in, d);
    }
    inside = next;
  }
  if (inside) total += std::pow(g.r_max(), d) - std::pow(r_in, d);
  return Convention::sphere_area(d) / d * total;
}

Normalization normalize_to_unit(const RadialProfile& v, double alpha, double s) {
  const int d = v.dim();
  const double a = sobolev_norm(v, s);
  const double b = riesz_norm(v, alpha);
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw NumericalError(NumericalError::Kind::DegenerateInput,
                         "normalization needs finite nonzero norms (sobolev=" + num(a) +
                             ", riesz=" + num(b) + ")");
  }
  const double mu = std::pow(a / b, 1.0 / (alpha - s - d));
  const double lambda = 1.0 / (std::pow(mu, s - 0.5 * d) * a);
  Normalization out{lambda * dilate(v, mu), lambda, mu, 0.0, 0.0};
  out.sobolev = sobolev_norm(out.u, s);
  out.riesz = riesz_norm(out.u, alpha);
  return out;
}

}  // namespace rfl
