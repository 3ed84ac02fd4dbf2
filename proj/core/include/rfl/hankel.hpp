#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rfl/grid.hpp"
#include "rfl/profile.hpp"

namespace rfl {

/// Dense quadrature matrix of the radial Fourier transform
///   u^(xi) = int_0^inf u(r) 2 pi (xi r)^{-nu} J_nu(2 pi xi r) r^{d-1} dr,  nu = (d-2)/2,
/// on a log-spaced grid, with frequencies on the same nodes. The transform is
/// its own inverse, so one matrix serves both directions.
///
/// Each panel [r_p, r_{p+1}] carries an 8-point Lagrange interpolant of u in
/// log r. Panels with few oscillations use 20-point Gauss-Legendre; strongly
/// oscillating panels use product integration against the Hankel asymptotic
/// form of the kernel. The interval (0, r_min) is handled analytically.
class HankelTransform {
 public:
  explicit HankelTransform(GridPtr grid);

  /// Shared instance per grid (a small cache; building costs O(N^2)).
  static std::shared_ptr<const HankelTransform> for_grid(const GridPtr& grid);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  /// y = T x, where x behaves like r^origin_power on (0, r_min).
  std::vector<double> apply(std::span<const double> x, double origin_power = 0.0) const;

  /// y = T^t x with the constant origin model (adjoint of apply(x, 0)).
  std::vector<double> apply_transpose(std::span<const double> x) const;

  double entry(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }

 private:
  double origin_tail(double xi, double power) const;

  GridPtr grid_;
  std::size_t n_;
  std::vector<double> m_;
  std::vector<double> tail0_;
};

/// Forward transform with the origin exponent read off the data.
SpectralProfile hankel_forward(const RadialProfile& u);

/// Inverse transform (same kernel).
RadialProfile hankel_inverse(const SpectralProfile& u_hat);

}  // namespace rfl
