#pragma once

#include "rfl/profile.hpp"

namespace rfl {

/// K(r, rho) = int_{S^{d-1}} (1 + |r theta - rho omega|^2)^{-gamma/2} d omega
///           = |S^{d-2}| int_0^pi (1 + r^2 + rho^2 - 2 r rho cos phi)^{-gamma/2} sin^{d-2} phi dphi.
/// Requires gamma > d - 1 and r, rho >= 0.
double angular_kernel(double r, double rho, double gamma, int d);

/// a(tau) = |S^{d-2}| int_0^pi (1 + tau^2 - 2 tau cos phi)^{-alpha/2} sin^{d-2} phi dphi,
/// so that the spherical mean of |x - y|^{-alpha} over |y| = rho, |x| = r is r^{-alpha} a(rho / r).
/// Requires 0 < alpha < d - 1 and tau >= 0, tau != 1.
double riesz_angular_factor(double tau, double alpha, int d);

/// (|x|^{-alpha} * u)(r_i) at every node by nested radial/angular quadrature.
/// Source points never coincide with the evaluation radius: away from the
/// diagonal the sum runs over the other nodes, and the band of 8 panels on
/// each side is integrated with Gauss points graded toward the diagonal.
/// Requires 0 < alpha < d - 1. Throws NumericalError(SingularQuadrature) when
/// two band rules of different order disagree.
RadialProfile riesz_potential_direct(const RadialProfile& u, double alpha);

/// (|x|^{-alpha} * u)(0) = |S^{d-1}| int u(rho) rho^{d-1-alpha} drho.
double riesz_potential_direct_origin(const RadialProfile& u, double alpha);

}  // namespace rfl
