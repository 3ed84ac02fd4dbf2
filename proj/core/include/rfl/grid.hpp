#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rfl {

inline constexpr std::size_t kDefaultGridSize = 2048;
inline constexpr double kDefaultRMin = 1e-4;
inline constexpr double kDefaultRMax = 1e3;

struct GridMeta {
  int d = 0;
  std::string kind;
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t n = 0;
};

/// Log-spaced radial grid r_i = r_min e^{i h} with trapezoid weights in
/// t = log r for integrals of the form  int_0^inf f(r) r^{d-1} dr.
/// The same nodes serve as frequency radii for spectral profiles.
class RadialGrid {
 public:
  static std::shared_ptr<const RadialGrid> log_spaced(int d, double r_min, double r_max,
                                                      std::size_t n);

  /// Keeps r_max and n, and moves r_min (by less than one step) so that
  /// `anchor` is a node. Jumps placed at the anchor then sit on the grid.
  static std::shared_ptr<const RadialGrid> anchored(int d, double r_min, double r_max,
                                                    std::size_t n, double anchor = 1.0);

  /// Anchored grid over [1e-4, 1e3] with n nodes.
  static std::shared_ptr<const RadialGrid> standard(int d, std::size_t n = kDefaultGridSize);

  int dim() const { return d_; }
  std::size_t size() const { return r_.size(); }
  double log_step() const { return h_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }
  double node(std::size_t i) const { return r_[i]; }
  double log_node(std::size_t i) const { return t0_ + h_ * static_cast<double>(i); }
  const std::vector<double>& nodes() const { return r_; }

  /// Linear-functional weights: sum_i w_i f_i approximates int f r^{d-1} dr,
  /// with the constant-model origin tail folded into w_0.
  const std::vector<double>& weights() const { return w_; }

  /// Index of the node closest to r (in log scale), clamped to the grid.
  std::size_t nearest(double r) const;

  GridMeta meta() const;
  bool same_as(const RadialGrid& other) const;

  /// Values of a sampled function at r_i * lambda, by 8-point Lagrange
  /// interpolation in log r. Outside the grid: constant continuation at the
  /// origin side, power-law continuation (or zero) at the far side.
  std::vector<double> resample(std::span<const double> values, double lambda) const;

 private:
  RadialGrid(int d, double t0, double h, std::size_t n, std::string kind);

  int d_;
  double t0_;
  double h_;
  std::string kind_;
  std::vector<double> r_;
  std::vector<double> w_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Options for integrals  int_a^b f(r) r^{d-1} dr  over sampled f.
struct TailPolicy {
  bool left = true;    // power-law model of f on (0, r_min)
  bool right = true;   // power-law extrapolation of f r^d beyond r_max
  bool strict = true;  // throw TailTruncation when the far tail is not controlled
};

/// Trapezoid rule in log r plus origin and far-field tails.
double integrate_radial(const RadialGrid& g, std::span<const double> f, TailPolicy tails = {});

/// Integral over [a, b] (a = 0 and b = inf allowed). Cuts inside the grid use
/// the piecewise-linear interpolant in log r, so adjacent ranges add up to the
/// full integral exactly.
double integrate_radial_range(const RadialGrid& g, std::span<const double> f, double a,
                              double b, TailPolicy tails = {});

/// Local exponent p with f ~ r^p near the origin, from the first two nodes
/// (0 when the sign pattern does not support a power-law model).
double origin_exponent(const RadialGrid& g, std::span<const double> f);

}  // namespace rfl
