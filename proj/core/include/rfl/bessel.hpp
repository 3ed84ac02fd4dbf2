#pragma once

namespace rfl {

/// Bessel function of the first kind J_nu(x) for nu >= 0, x >= 0.
/// Ascending series for x < max(12, 2 nu), Hankel asymptotic expansion
/// otherwise. For half-integer nu the expansion terminates and is exact.
double bessel_j(double nu, double x);

/// J_nu(x) / x^nu, finite at x = 0 where it equals 1 / (2^nu Gamma(nu + 1)).
double bessel_j_scaled(double nu, double x);

/// Amplitude series of the large-argument expansion:
/// J_nu(x) = sqrt(2 / (pi x)) (P cos w - Q sin w), w = x - nu pi/2 - pi/4.
struct HankelPQ {
  double p = 1.0;
  double q = 0.0;
};

HankelPQ hankel_pq(double nu, double x);

}  // namespace rfl
