#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rfl/error.hpp"
#include "rfl/grid.hpp"

namespace rfl {

enum class Space { physical, frequency };

/// A radial function sampled on a RadialGrid. The space tag keeps physical
/// and frequency samples from being mixed up at compile time.
template <Space Sp>
class Profile {
 public:
  static constexpr Space space = Sp;

  Profile() = default;

  Profile(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), v_(std::move(values)) {
    if (!grid_) throw ParameterError("profile requires a grid");
    if (v_.size() != grid_->size()) throw ParameterError("profile size matches grid violated");
    for (double x : v_) {
      if (!std::isfinite(x)) {
        throw NumericalError(NumericalError::Kind::Divergence, "non-finite profile value");
      }
    }
  }

  static Profile zeros(GridPtr grid) {
    const std::size_t n = grid->size();
    return Profile(std::move(grid), std::vector<double>(n, 0.0));
  }

  template <class F>
  static Profile sample(GridPtr grid, F&& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->node(i));
    return Profile(std::move(grid), std::move(v));
  }

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int dim() const { return grid_->dim(); }
  std::size_t size() const { return v_.size(); }
  std::span<const double> values() const { return v_; }
  const std::vector<double>& vec() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  bool is_zero() const { return max_abs() == 0.0; }

  template <class F>
  Profile map(F&& f) const {
    std::vector<double> out(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) out[i] = f(v_[i]);
    return Profile(grid_, std::move(out));
  }

  /// Pointwise product with a function of the radius.
  template <class F>
  Profile times(F&& f) const {
    std::vector<double> out(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i] * f(grid_->node(i));
    return Profile(grid_, std::move(out));
  }

  Profile abs() const {
    return map([](double x) { return std::abs(x); });
  }

  friend Profile operator+(const Profile& a, const Profile& b) { return combine(a, b, 1.0); }
  friend Profile operator-(const Profile& a, const Profile& b) { return combine(a, b, -1.0); }
  friend Profile operator*(double c, const Profile& a) {
    return a.map([c](double x) { return c * x; });
  }
  friend Profile operator*(const Profile& a, double c) { return c * a; }
  Profile operator-() const { return -1.0 * (*this); }

 private:
  static Profile combine(const Profile& a, const Profile& b, double sign) {
    if (!a.grid_->same_as(*b.grid_)) throw ParameterError("profiles share a grid violated");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.v_[i] + sign * b.v_[i];
    return Profile(a.grid_, std::move(out));
  }

  GridPtr grid_;
  std::vector<double> v_;
};

using RadialProfile = Profile<Space::physical>;
using SpectralProfile = Profile<Space::frequency>;

/// u(lambda r) on the same grid (exact shift when log(lambda) is a multiple
/// of the log step, 8-point interpolation otherwise).
template <Space Sp>
Profile<Sp> dilate(const Profile<Sp>& u, double lambda) {
  return Profile<Sp>(u.grid_ptr(), u.grid().resample(u.values(), lambda));
}

/// Relative discrete L2 distance  ||a - b|| / ||b||  in the grid measure.
template <Space Sp>
double relative_l2_error(const Profile<Sp>& a, const Profile<Sp>& b) {
  const auto& w = a.grid().weights();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = a[i] - b[i];
    num += w[i] * e * e;
    den += w[i] * b[i] * b[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

/// CSV with header `r,value` or `xi,value`, 17 significant digits.
template <Space Sp>
std::string to_csv(const Profile<Sp>& u);

std::string grid_sidecar_json(const GridMeta& meta);

/// Writes `path` (CSV) and `path + ".json"` (grid metadata).
template <Space Sp>
void write_profile(const Profile<Sp>& u, const std::string& path);

/// Reads a CSV written by write_profile together with its sidecar. The grid
/// is rebuilt from the sidecar and must reproduce the stored nodes.
template <Space Sp>
Profile<Sp> read_profile(const std::string& path);

}  // namespace rfl
