#include "rfl/hankel.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "rfl/bessel.hpp"

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kStencil = 8;
constexpr int kGauss = 20;
constexpr int kCheb = 8;
// Product integration takes over once a panel spans this many radians and the
// kernel is in its asymptotic regime.
constexpr double kFilonSpan = 8.0;
constexpr double kFilonStart = 30.0;

using cplx = std::complex<double>;

struct GaussRule {
  std::array<double, kGauss> x{};  // nodes in (0, 1)
  std::array<double, kGauss> w{};  // weights summing to 1
};

GaussRule gauss_rule() {
  using G = boost::math::quadrature::gauss<double, kGauss>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  GaussRule g;
  int k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      g.x[k] = 0.5;
      g.w[k++] = 0.5 * w[i];
      continue;
    }
    g.x[k] = 0.5 - 0.5 * a[i];
    g.w[k++] = 0.5 * w[i];
    g.x[k] = 0.5 + 0.5 * a[i];
    g.w[k++] = 0.5 * w[i];
  }
  return g;
}

// Lagrange basis values at position x (in steps) for stencil offsets o_k.
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

// Inverse of the Vandermonde matrix on Chebyshev nodes: column c holds the
// monomial coefficients of the Lagrange polynomial for node c.
std::array<std::array<double, kCheb>, kCheb> cheb_vandermonde_inverse(
    const std::array<double, kCheb>& x) {
  std::array<std::array<double, 2 * kCheb>, kCheb> a{};
  for (int i = 0; i < kCheb; ++i) {
    double p = 1.0;
    for (int j = 0; j < kCheb; ++j) {
      a[i][j] = p;
      p *= x[i];
    }
    a[i][kCheb + i] = 1.0;
  }
  for (int col = 0; col < kCheb; ++col) {
    int piv = col;
    for (int r = col + 1; r < kCheb; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    const double inv = 1.0 / a[col][col];
    for (double& v : a[col]) v *= inv;
    for (int r = 0; r < kCheb; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * kCheb; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::array<std::array<double, kCheb>, kCheb> out{};
  for (int i = 0; i < kCheb; ++i) {
    for (int j = 0; j < kCheb; ++j) out[i][j] = a[i][kCheb + j];
  }
  return out;  // out[m][c]
}

using Cache = std::map<std::tuple<int, std::size_t, double, double>,
                       std::shared_ptr<const HankelTransform>>;

}  // namespace

HankelTransform::HankelTransform(GridPtr grid)
    : grid_(std::move(grid)), n_(grid_->size()), m_(n_ * n_, 0.0), tail0_(n_) {
  const int d = grid_->dim();
  const double nu = 0.5 * (d - 2);
  const double h = grid_->log_step();
  const double t0 = grid_->log_node(0);
  const std::size_t n = n_;
  const std::size_t lattice = 2 * n - 2;  // m = i + p ranges over [0, 2n - 3]

  const GaussRule gr = gauss_rule();
  std::array<double, kCheb> cx{};
  for (int c = 0; c < kCheb; ++c) cx[c] = std::cos(kPi * (c + 0.5) / kCheb);
  const auto vinv = cheb_vandermonde_inverse(cx);
  const double eh1 = std::expm1(h);

  // Positions (in steps from the panel start) of the quadrature points.
  std::array<double, kGauss> gpos{};
  for (int q = 0; q < kGauss; ++q) gpos[q] = gr.x[q];
  std::array<double, kCheb> fpos{};
  for (int c = 0; c < kCheb; ++c) fpos[c] = std::log1p(eh1 * 0.5 * (1.0 + cx[c])) / h;

  const double phase = 0.5 * nu * kPi + 0.25 * kPi;
  const double kscale = 2.0 * kPi * std::pow(2.0 * kPi, nu);

  // Per lattice index m: either Gauss values T(m, q) or complex product
  // weights F(m, c), both already scaled so that entry = xi_i^{-d} * (...).
  std::vector<char> use_filon(lattice);
  std::vector<std::array<double, kGauss>> tg(lattice);
  std::vector<std::array<cplx, kCheb>> tf(lattice);
  for (std::size_t m = 0; m < lattice; ++m) {
    const double xa = std::exp(2.0 * t0 + h * static_cast<double>(m));  // xi_i r_p
    const double k_a = 2.0 * kPi * xa;
    use_filon[m] = (k_a * eh1 >= kFilonSpan) && (k_a >= kFilonStart);
    if (!use_filon[m]) {
      for (int q = 0; q < kGauss; ++q) {
        const double xr = xa * std::exp(h * gpos[q]);
        const double z = 2.0 * kPi * xr;
        tg[m][q] = h * gr.w[q] * std::pow(xr, d) * kscale * bessel_j_scaled(nu, z);
      }
      continue;
    }
    const double xH = 0.5 * xa * eh1;              // xi H
    const double xc = xa * (1.0 + 0.5 * eh1);      // xi r_center
    const double omega = 2.0 * kPi * xH;
    const cplx e1 = std::polar(1.0, omega), em = std::conj(e1);
    const cplx iw(0.0, omega);
    std::array<cplx, kCheb> mom{};
    mom[0] = (e1 - em) / iw;
    for (int j = 1; j < kCheb; ++j) {
      const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
      mom[j] = (e1 - sgn * em) / iw - (static_cast<double>(j) / iw) * mom[j - 1];
    }
    const cplx rot = xH * std::polar(1.0, 2.0 * kPi * xc - phase);
    for (int c = 0; c < kCheb; ++c) {
      cplx wc = 0.0;
      for (int j = 0; j < kCheb; ++j) wc += mom[j] * vinv[j][c];
      const double xr = xc + xH * cx[c];
      const double z = 2.0 * kPi * xr;
      const HankelPQ pq = hankel_pq(nu, z);
      const double amp = std::pow(xr, d - 1) * 2.0 * kPi * std::pow(xr, -nu) * std::sqrt(2.0 / (kPi * z));
      tf[m][c] = wc * rot * amp * cplx(pq.p, pq.q);
    }
  }

  // Lagrange coefficients for interior panels (stencil offsets -3..4) and the
  // combined per-lattice table G(m, k).
  const int off_int = -(kStencil / 2 - 1);
  std::array<std::array<double, kStencil>, kGauss> lg_int{};
  std::array<std::array<double, kStencil>, kCheb> lf_int{};
  for (int q = 0; q < kGauss; ++q) lg_int[q] = lagrange(gpos[q], off_int);
  for (int c = 0; c < kCheb; ++c) lf_int[c] = lagrange(fpos[c], off_int);

  auto panel_weights = [&](std::size_t m, const auto& lg, const auto& lf) {
    std::array<double, kStencil> acc{};
    if (!use_filon[m]) {
      for (int q = 0; q < kGauss; ++q) {
        for (int k = 0; k < kStencil; ++k) acc[k] += tg[m][q] * lg[q][k];
      }
    } else {
      for (int c = 0; c < kCheb; ++c) {
        for (int k = 0; k < kStencil; ++k) acc[k] += (tf[m][c] * lf[c][k]).real();
      }
    }
    return acc;
  };

  std::vector<std::array<double, kStencil>> g_int(lattice);
  for (std::size_t m = 0; m < lattice; ++m) g_int[m] = panel_weights(m, lg_int, lf_int);

  const std::size_t panels = n - 1;
  const std::size_t last_interior = n - 5;  // panels p with p - 3 <= n - 8
  for (std::size_t p = 0; p < panels; ++p) {
    const bool interior = p >= 3 && p <= last_interior;
    const std::size_t st = interior ? p - 3 : (p < 3 ? 0 : n - kStencil);
    std::array<std::array<double, kStencil>, kGauss> lg{};
    std::array<std::array<double, kStencil>, kCheb> lf{};
    if (!interior) {
      const int off = static_cast<int>(st) - static_cast<int>(p);
      for (int q = 0; q < kGauss; ++q) lg[q] = lagrange(gpos[q], off);
      for (int c = 0; c < kCheb; ++c) lf[c] = lagrange(fpos[c], off);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = i + p;
      const auto acc = interior ? g_int[m] : panel_weights(m, lg, lf);
      double* row = &m_[i * n + st];
      for (int k = 0; k < kStencil; ++k) row[k] += acc[k];
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid_->node(i);
    const double scale = std::pow(xi, -d);
    for (std::size_t j = 0; j < n; ++j) m_[i * n + j] *= scale;
    tail0_[i] = origin_tail(xi, 0.0);
    m_[i * n] += tail0_[i];
  }
}

double HankelTransform::origin_tail(double xi, double power) const {
  const int d = grid_->dim();
  const double a = grid_->r_min();
  const double nu = 0.5 * (d - 2);
  const double z = kPi * xi * a;
  if (power == 0.0 || z > 5.0) {
    // int_0^a kernel r^{d-1} dr in closed form
    return std::pow(a / xi, 0.5 * d) * bessel_j(0.5 * d, 2.0 * kPi * xi * a);
  }
  // int_0^a (r/a)^power kernel r^{d-1} dr by the ascending series
  double term = 1.0 / std::tgamma(nu + 1.0);
  double sum = term / (d + power);
  for (int m = 1; m < 200; ++m) {
    term *= -(z * z) / (m * (m + nu));
    const double add = term / (2.0 * m + d + power);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * std::pow(kPi, nu + 1.0) * std::pow(a, d) * sum;
}

std::shared_ptr<const HankelTransform> HankelTransform::for_grid(const GridPtr& grid) {
  static std::mutex mu;
  static Cache cache;
  const auto key = std::make_tuple(grid->dim(), grid->size(), grid->log_node(0), grid->log_step());
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() >= 4) cache.erase(cache.begin());
  auto t = std::make_shared<const HankelTransform>(grid);
  cache.emplace(key, t);
  return t;
}

std::vector<double> HankelTransform::apply(std::span<const double> x, double origin_power) const {
  if (x.size() != n_) throw ParameterError("profile size matches transform grid violated");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = &m_[i * n_];
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  if (origin_power != 0.0 && x[0] != 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      y[i] += (origin_tail(grid_->node(i), origin_power) - tail0_[i]) * x[0];
    }
  }
  return y;
}

std::vector<double> HankelTransform::apply_transpose(std::span<const double> x) const {
  if (x.size() != n_) throw ParameterError("profile size matches transform grid violated");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = &m_[i * n_];
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) y[j] += row[j] * xi;
  }
  return y;
}

SpectralProfile hankel_forward(const RadialProfile& u) {
  const auto t = HankelTransform::for_grid(u.grid_ptr());
  return SpectralProfile(u.grid_ptr(), t->apply(u.values(), origin_exponent(u.grid(), u.values())));
}

RadialProfile hankel_inverse(const SpectralProfile& u_hat) {
  const auto t = HankelTransform::for_grid(u_hat.grid_ptr());
  return RadialProfile(u_hat.grid_ptr(),
                       t->apply(u_hat.values(), origin_exponent(u_hat.grid(), u_hat.values())));
}

}  // namespace rfl
