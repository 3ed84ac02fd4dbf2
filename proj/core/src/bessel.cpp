#include "rfl/bessel.hpp"

#include <cmath>
#include <numbers>

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;

bool use_series(double nu, double x) { return x < std::max(12.0, 2.0 * nu); }

// sum_k (-x^2/4)^k / (k! Gamma(k + nu + 1)) / 2^nu
double scaled_series(double nu, double x) {
  const double y = -0.25 * x * x;
  double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= y / (k * (k + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 0.5 * x) break;
  }
  return sum;
}

double asymptotic(double nu, double x) {
  const HankelPQ pq = hankel_pq(nu, x);
  const double phase = 0.5 * nu * kPi + 0.25 * kPi;
  // cos(x - phase) and sin(x - phase) expanded to keep x exact
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(phase), sp = std::sin(phase);
  const double c = cx * cp + sx * sp;
  const double s = sx * cp - cx * sp;
  return std::sqrt(2.0 / (kPi * x)) * (pq.p * c - pq.q * s);
}

}  // namespace

HankelPQ hankel_pq(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  HankelPQ out;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double f = (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    term *= f;
    const double mag = std::abs(term);
    if (mag == 0.0) break;           // terminating series (half-integer order)
    if (mag > last && k > 2) break;  // past the smallest term
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) {
      out.q += sign * term;
    } else {
      out.p += sign * term;
    }
    last = mag;
    if (mag < 1e-17) break;
  }
  return out;
}

double bessel_j(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (use_series(nu, x)) return scaled_series(nu, x) * std::pow(x, nu);
  return asymptotic(nu, x);
}

double bessel_j_scaled(double nu, double x) {
  if (use_series(nu, x)) return scaled_series(nu, x);
  return asymptotic(nu, x) / std::pow(x, nu);
}

}  // namespace rfl
