#include "rfl/riesz_direct.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rfl/operators.hpp"

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kStencil = 8;
constexpr int kBand = 8;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <class F>
double gk(F&& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  return GK::integrate(f, a, b, 8, 1e-12);
}

// int_0^pi f(phi) dphi for an integrand peaked at phi = 0 with width w and a
// power-law decay beyond it: plain rule on [0, w], log substitution on [w, pi].
template <class F>
double peaked_integral(F&& f, double w) {
  if (!(w < kPi)) return gk(f, 0.0, kPi);
  const double head = gk(f, 0.0, w);
  auto g = [&](double y) {
    const double phi = std::exp(y);
    return f(phi) * phi;
  };
  return head + gk(g, std::log(w), std::log(kPi));
}

double sin_power(double phi, int d) { return d == 2 ? 1.0 : std::pow(std::sin(phi), d - 2); }

struct Rule {
  std::vector<double> x;  // positions in (0, 1), in steps from the panel start
  std::vector<double> w;  // weights in steps
};

template <int M>
void append_gauss(Rule& rule, double a, double b) {
  using G = boost::math::quadrature::gauss<double, M>;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (std::size_t k = 0; k < ab.size(); ++k) {
    if (ab[k] == 0.0) {
      rule.x.push_back(c);
      rule.w.push_back(hw * wt[k]);
      continue;
    }
    rule.x.push_back(c - hw * ab[k]);
    rule.w.push_back(hw * wt[k]);
    rule.x.push_back(c + hw * ab[k]);
    rule.w.push_back(hw * wt[k]);
  }
}

template <int M>
Rule plain_rule() {
  Rule r;
  append_gauss<M>(r, 0.0, 1.0);
  return r;
}

// Geometric subdivision toward x = 0 (or x = 1 when mirrored).
template <int M>
Rule graded_rule(int levels, double ratio, bool toward_one) {
  Rule r;
  double lo = std::pow(ratio, levels);
  append_gauss<M>(r, 0.0, lo);
  for (int k = levels; k > 0; --k) {
    const double hi = lo / ratio;
    append_gauss<M>(r, lo, hi);
    lo = hi;
  }
  if (toward_one) {
    for (double& x : r.x) x = 1.0 - x;
  }
  return r;
}

struct BandTables {
  // For each relative panel o in [-kBand, kBand - 1]: rule and a-values.
  std::array<Rule, 2 * kBand> rule;
  std::array<std::vector<double>, 2 * kBand> a;
};

template <int Plain, int Graded>
BandTables band_tables(double h, double alpha, int d, int levels) {
  BandTables bt;
  for (int o = -kBand; o < kBand; ++o) {
    const int slot = o + kBand;
    if (o == -1) {
      bt.rule[slot] = graded_rule<Graded>(levels, 0.2, true);
    } else if (o == 0) {
      bt.rule[slot] = graded_rule<Graded>(levels, 0.2, false);
    } else {
      bt.rule[slot] = plain_rule<Plain>();
    }
    for (double x : bt.rule[slot].x) {
      bt.a[slot].push_back(riesz_angular_factor(std::exp((o + x) * h), alpha, d));
    }
  }
  return bt;
}

std::array<double, kStencil> lagrange(double x, int first_offset) {
  std::array<double, kStencil> out{};
  for (int k = 0; k < kStencil; ++k) {
    double b = 1.0;
    for (int l = 0; l < kStencil; ++l) {
      if (l != k) b *= (x - (first_offset + l)) / static_cast<double>(k - l);
    }
    out[k] = b;
  }
  return out;
}

// Band contribution for output node i (without the r_i^{-alpha} factor).
double band_sum(const BandTables& bt, const RadialGrid& g, std::span<const double> u,
                std::size_t i) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const auto ii = static_cast<std::ptrdiff_t>(i);
  const int d = g.dim();
  const double h = g.log_step();
  double total = 0.0;
  for (int o = -kBand; o < kBand; ++o) {
    const std::ptrdiff_t p = ii + o;
    if (p < 0 || p > n - 2) continue;
    const int slot = o + kBand;
    const std::ptrdiff_t st = std::clamp<std::ptrdiff_t>(p - (kStencil / 2 - 1), 0, n - kStencil);
    const int off = static_cast<int>(st - p);
    const Rule& rule = bt.rule[slot];
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const auto basis = lagrange(rule.x[q], off);
      double uq = 0.0;
      for (int k = 0; k < kStencil; ++k) uq += basis[k] * u[static_cast<std::size_t>(st + k)];
      const double t = g.log_node(static_cast<std::size_t>(p)) + rule.x[q] * h;
      total += rule.w[q] * h * uq * std::exp(d * t) * bt.a[slot][q];
    }
  }
  return total;
}

}  // namespace

double angular_kernel(double r, double rho, double gamma, int d) {
  if (d < 2) throw ParameterError("d >= 2 violated (d=" + std::to_string(d) + ")");
  if (!(gamma > d - 1)) {
    throw ParameterError("gamma > d - 1 violated (gamma=" + num(gamma) + ", d=" + std::to_string(d) + ")");
  }
  if (!(r >= 0.0) || !(rho >= 0.0)) throw ParameterError("r, rho >= 0 violated");
  const double base0 = 1.0 + (r - rho) * (r - rho);
  if (r * rho == 0.0) return Convention::sphere_area(d) * std::pow(base0, -0.5 * gamma);
  const double four = 4.0 * r * rho;
  auto f = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    return std::pow(base0 + four * s * s, -0.5 * gamma) * sin_power(phi, d);
  };
  const double w = std::sqrt(base0 / (r * rho));
  return Convention::sphere_area(d - 1) * peaked_integral(f, w);
}

double riesz_angular_factor(double tau, double alpha, int d) {
  if (!(alpha > 0.0) || !(alpha < d - 1)) {
    throw ParameterError("0 < alpha < d - 1 violated (alpha=" + num(alpha) + ")");
  }
  if (!(tau >= 0.0) || tau == 1.0) throw ParameterError("tau >= 0, tau != 1 violated");
  if (tau == 0.0) return Convention::sphere_area(d);
  const double base0 = (1.0 - tau) * (1.0 - tau);
  const double four = 4.0 * tau;
  auto f = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    return std::pow(base0 + four * s * s, -0.5 * alpha) * sin_power(phi, d);
  };
  const double w = std::abs(1.0 - tau) / std::sqrt(tau);
  return Convention::sphere_area(d - 1) * peaked_integral(f, w);
}

RadialProfile riesz_potential_direct(const RadialProfile& u, double alpha) {
  const auto& g = u.grid();
  const int d = g.dim();
  if (!(alpha > 0.0) || !(alpha < d - 1)) {
    throw ParameterError("0 < alpha < d - 1 violated (alpha=" + num(alpha) + ")");
  }
  const std::size_t n = g.size();
  if (n < 2 * kBand + kStencil) throw ParameterError("grid size N >= 24 violated for direct route");
  const double h = g.log_step();
  std::vector<double> out(n, 0.0);
  if (u.is_zero()) return RadialProfile(u.grid_ptr(), out);

  // a(e^{k h}) for the off-band lattice offsets.
  std::vector<double> a_far(2 * n - 1, 0.0);
  for (std::ptrdiff_t k = -static_cast<std::ptrdiff_t>(n - 1); k < static_cast<std::ptrdiff_t>(n); ++k) {
    if (std::abs(k) < kBand) continue;
    a_far[static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(n - 1))] =
        riesz_angular_factor(std::exp(k * h), alpha, d);
  }
  const BandTables fine = band_tables<12, 8>(h, alpha, d, 16);
  const BandTables coarse = band_tables<8, 6>(h, alpha, d, 11);

  std::vector<double> src(n);
  for (std::size_t j = 0; j < n; ++j) src[j] = u[j] * std::exp(d * g.log_node(j));

  const double r0 = g.r_min();
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    auto far = [&](std::size_t j0, std::size_t j1) {  // trapezoid over [t_j0, t_j1]
      if (j1 <= j0) return;
      for (std::size_t j = j0; j <= j1; ++j) {
        const double wj = (j == j0 || j == j1) ? 0.5 * h : h;
        const auto k = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
        total += wj * src[j] * a_far[static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(n - 1))];
      }
    };
    if (i >= kBand) far(0, i - kBand);
    if (i + kBand <= n - 1) far(i + kBand, n - 1);
    const double band = band_sum(fine, g, u.values(), i);
    const double band_lo = band_sum(coarse, g, u.values(), i);
    total += band;
    const double ri = g.node(i);
    total += u[0] * riesz_angular_factor(0.5 * r0 / ri, alpha, d) * std::pow(r0, d) / d;
    const double rpow = std::pow(ri, -alpha);
    out[i] = rpow * total;
    worst = std::max(worst, rpow * std::abs(band - band_lo));
    scale = std::max(scale, std::abs(out[i]));
  }
  if (worst > 1e-6 * scale) {
    throw NumericalError(NumericalError::Kind::SingularQuadrature,
                         "diagonal band refinement did not converge (difference " + num(worst / scale) + ")");
  }
  return RadialProfile(u.grid_ptr(), std::move(out));
}

double riesz_potential_direct_origin(const RadialProfile& u, double alpha) {
  const int d = u.dim();
  if (!(alpha > 0.0) || !(alpha < d)) {
    throw ParameterError("0 < alpha < d violated (alpha=" + num(alpha) + ")");
  }
  const auto& g = u.grid();
  std::vector<double> f(u.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = u[j] * std::pow(g.node(j), -alpha);
  TailPolicy tails;
  tails.strict = false;
  return Convention::sphere_area(d) * integrate_radial(g, f, tails);
}

}  // namespace rfl
