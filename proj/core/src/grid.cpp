#include "rfl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rfl/error.hpp"

namespace rfl {

namespace {

constexpr int kStencil = 8;

struct FarTail {
  double value = 0.0;
  bool ok = true;
};

// Extrapolates g(t) = f r^d past the last node assuming g ~ e^{-kappa t}.
FarTail far_tail(std::span<const double> g, double h, double scale) {
  const std::size_t n = g.size();
  const double last = g[n - 1];
  if (last == 0.0) return {};
  // Even a very slow decay rate would leave a negligible remainder.
  if (std::abs(last) * 50.0 <= 1e-10 * scale) return {};
  if (n < 8) return {0.0, false};
  for (std::size_t k = n - 8; k < n; ++k) {
    if (!(g[k] * last > 0.0)) return {0.0, false};
  }
  const double ka = std::log(g[n - 8] / g[n - 5]) / (3.0 * h);
  const double kb = std::log(g[n - 4] / g[n - 1]) / (3.0 * h);
  if (!(kb > 0.05)) return {0.0, false};
  if (std::abs(ka - kb) > 0.1 * kb + 0.01) return {0.0, false};
  return {last / kb, true};
}

[[noreturn]] void tail_failure(const RadialGrid& g) {
  std::ostringstream os;
  os.precision(6);
  os << "integrand has not decayed at the grid edge r_max=" << g.r_max();
  throw NumericalError(NumericalError::Kind::TailTruncation, os.str());
}

// Integral of (r / r0)^p r^{d-1} over (a, r0).
double origin_piece(double r0, double a, double p, int d) {
  const double e = p + d;
  const double full = std::pow(r0, d) / e;
  if (a <= 0.0) return full;
  return full * (1.0 - std::pow(a / r0, e));
}

}  // namespace

RadialGrid::RadialGrid(int d, double t0, double h, std::size_t n, std::string kind)
    : d_(d), t0_(t0), h_(h), kind_(std::move(kind)), r_(n), w_(n) {
  for (std::size_t i = 0; i < n; ++i) {
    r_[i] = std::exp(t0_ + h_ * static_cast<double>(i));
    w_[i] = h_ * std::pow(r_[i], d_);
  }
  w_.front() *= 0.5;
  w_.back() *= 0.5;
  w_.front() += std::pow(r_.front(), d_) / d_;
}

std::shared_ptr<const RadialGrid> RadialGrid::log_spaced(int d, double r_min, double r_max,
                                                         std::size_t n) {
  if (d < 1) throw ParameterError("d >= 1 violated for grid");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ParameterError("0 < r_min < r_max violated");
  if (n < 2 * kStencil) throw ParameterError("grid size N >= 16 violated");
  const double t0 = std::log(r_min);
  const double h = (std::log(r_max) - t0) / static_cast<double>(n - 1);
  return std::shared_ptr<const RadialGrid>(new RadialGrid(d, t0, h, n, "log-spaced"));
}

std::shared_ptr<const RadialGrid> RadialGrid::anchored(int d, double r_min, double r_max,
                                                       std::size_t n, double anchor) {
  if (!(anchor > r_min) || !(anchor < r_max)) {
    throw ParameterError("r_min < anchor < r_max violated");
  }
  if (n < 2 * kStencil) throw ParameterError("grid size N >= 16 violated");
  const double span = std::log(r_max) - std::log(r_min);
  const double nominal = span / static_cast<double>(n - 1);
  const double upper = std::log(r_max) - std::log(anchor);
  const double steps = std::max(1.0, std::round(upper / nominal));
  const double h = upper / steps;
  const double t0 = std::log(r_max) - h * static_cast<double>(n - 1);
  if (d < 1) throw ParameterError("d >= 1 violated for grid");
  return std::shared_ptr<const RadialGrid>(new RadialGrid(d, t0, h, n, "log-spaced"));
}

std::shared_ptr<const RadialGrid> RadialGrid::standard(int d, std::size_t n) {
  return anchored(d, kDefaultRMin, kDefaultRMax, n, 1.0);
}

std::size_t RadialGrid::nearest(double r) const {
  if (!(r > 0.0)) return 0;
  const double x = std::round((std::log(r) - t0_) / h_);
  if (x <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(x), size() - 1);
}

GridMeta RadialGrid::meta() const { return {d_, kind_, r_min(), r_max(), size()}; }

bool RadialGrid::same_as(const RadialGrid& o) const {
  if (this == &o) return true;
  return d_ == o.d_ && size() == o.size() && std::abs(t0_ - o.t0_) <= 1e-12 &&
         std::abs(h_ - o.h_) <= 1e-14 * h_;
}

std::vector<double> RadialGrid::resample(std::span<const double> f, double lambda) const {
  const std::size_t n = size();
  if (f.size() != n) throw ParameterError("profile size matches grid violated");
  if (!(lambda > 0.0)) throw ParameterError("dilation lambda > 0 violated");
  const double shift = std::log(lambda) / h_;
  std::vector<double> out(n);
  const double last = f[n - 1], prev = f[n - 2];
  const bool power_tail = last * prev > 0.0 && std::abs(last) < std::abs(prev);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) + shift;
    if (x <= 0.0) {
      out[i] = f[0];
      continue;
    }
    if (x >= static_cast<double>(n - 1)) {
      out[i] = power_tail ? last * std::pow(last / prev, x - static_cast<double>(n - 1)) : 0.0;
      continue;
    }
    const double nearest_x = std::round(x);
    if (std::abs(x - nearest_x) < 1e-12) {
      out[i] = f[static_cast<std::size_t>(nearest_x)];
      continue;
    }
    const auto j = static_cast<std::ptrdiff_t>(std::floor(x));
    const std::ptrdiff_t st =
        std::clamp<std::ptrdiff_t>(j - (kStencil / 2 - 1), 0, static_cast<std::ptrdiff_t>(n) - kStencil);
    double acc = 0.0;
    for (int k = 0; k < kStencil; ++k) {
      double basis = 1.0;
      for (int l = 0; l < kStencil; ++l) {
        if (l != k) basis *= (x - static_cast<double>(st + l)) / static_cast<double>(k - l);
      }
      acc += basis * f[static_cast<std::size_t>(st + k)];
    }
    out[i] = acc;
  }
  return out;
}

double origin_exponent(const RadialGrid& g, std::span<const double> f) {
  if (f.size() < 2 || !(f[0] * f[1] > 0.0)) return 0.0;
  const double p = std::log(f[1] / f[0]) / g.log_step();
  return std::clamp(p, -g.dim() + 0.25, 60.0);
}

double integrate_radial(const RadialGrid& g, std::span<const double> f, TailPolicy tails) {
  return integrate_radial_range(g, f, 0.0, INFINITY, tails);
}

double integrate_radial_range(const RadialGrid& g, std::span<const double> f, double a,
                              double b, TailPolicy tails) {
  const std::size_t n = g.size();
  if (f.size() != n) throw ParameterError("profile size matches grid violated");
  if (!(a >= 0.0) || !(b >= a)) throw ParameterError("0 <= a <= b violated for integral range");
  if (a == b) return 0.0;
  const int d = g.dim();
  const double h = g.log_step();

  std::vector<double> gv(n);
  for (std::size_t i = 0; i < n; ++i) gv[i] = f[i] * std::pow(g.node(i), d);

  double total = 0.0;
  // Interior: integral of the piecewise-linear interpolant of gv over [ta, tb] in t.
  const double t_first = g.log_node(0), t_last = g.log_node(n - 1);
  const double ta = a > 0.0 ? std::max(std::log(a), t_first) : t_first;
  const double tb = std::isinf(b) ? t_last : std::min(std::log(b), t_last);
  if (tb > ta) {
    auto value_at = [&](double t) {
      const double x = std::clamp((t - t_first) / h, 0.0, static_cast<double>(n - 1));
      const auto j = std::min(static_cast<std::size_t>(x), n - 2);
      const double frac = x - static_cast<double>(j);
      return gv[j] + frac * (gv[j + 1] - gv[j]);
    };
    const double xa = (ta - t_first) / h, xb = (tb - t_first) / h;
    auto ja = static_cast<std::size_t>(std::ceil(xa - 1e-12));
    auto jb = static_cast<std::size_t>(std::floor(xb + 1e-12));
    ja = std::min(ja, n - 1);
    jb = std::min(jb, n - 1);
    if (ja > jb) {
      total += 0.5 * (value_at(ta) + value_at(tb)) * (tb - ta);
    } else {
      const double tja = g.log_node(ja), tjb = g.log_node(jb);
      total += 0.5 * (value_at(ta) + gv[ja]) * std::max(0.0, tja - ta);
      for (std::size_t j = ja; j < jb; ++j) total += 0.5 * h * (gv[j] + gv[j + 1]);
      total += 0.5 * (gv[jb] + value_at(tb)) * std::max(0.0, tb - tjb);
    }
  }
  const double r0 = g.r_min();
  if (tails.left && a < r0) {
    const double p = origin_exponent(g, f);
    total += f[0] * origin_piece(r0, a, p, d);
  }
  if (tails.right && std::isinf(b)) {
    double scale = 0.0;
    for (double v : gv) scale += std::abs(v);
    scale *= h;
    const FarTail ft = far_tail(gv, h, scale);
    if (!ft.ok && tails.strict) tail_failure(g);
    total += ft.value;
  }
  return total;
}

}  // namespace rfl
