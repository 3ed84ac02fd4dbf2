#include "rfl/maximizer.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <deque>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "rfl/bessel.hpp"
#include "rfl/hankel.hpp"
#include "rfl/operators.hpp"

namespace rfl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLowFrequencyMass = 1e-3;
constexpr int kCheckEvery = 50;
constexpr int kStopWindow = 50;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// The three quadratic forms share one transform and one spectral measure.
struct Model {
  ParamSet ps;
  std::shared_ptr<const HankelTransform> t;
  std::vector<double> w, o0, on, os;
  std::vector<double> xi_neg, xi_pos;  // xi^{-2r}, xi^{2s}
  double a = 0.0;                      // r / S
  double low_edge = 0.0;               // int_0^{xi_0} xi^{d-1-2r} dxi

  Model(const ParamSet& p, const GridPtr& g) : ps(p), t(HankelTransform::for_grid(g)) {
    const std::size_t n = g->size();
    w = g->weights();
    a = ps.r / ps.S;
    low_edge = std::pow(g->r_min(), ps.d - 2.0 * ps.r) / (ps.d - 2.0 * ps.r);
    o0 = w;
    on.resize(n);
    os.resize(n);
    xi_neg.resize(n);
    xi_pos.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g->node(i);
      xi_neg[i] = std::pow(x, -2.0 * ps.r);
      xi_pos[i] = std::pow(x, 2.0 * ps.s);
      on[i] = w[i] * xi_neg[i];
      os[i] = w[i] * xi_pos[i];
    }
    // The grid's origin piece assumes a constant integrand on (0, xi_0); with
    // the powers of xi folded in, each weight gets its own piece. Node 0 still
    // satisfies o0 <= on^{1-a} os^a by concavity of log.
    const double x0 = g->r_min();
    const double base = w[0] - std::pow(x0, ps.d) / ps.d;
    on[0] = base * xi_neg[0] + low_edge;
    os[0] = base * xi_pos[0] + std::pow(x0, ps.d + 2.0 * ps.s) / (ps.d + 2.0 * ps.s);
  }

  struct Parts {
    double lw = 0.0;
    std::vector<double> g;  // d log W / d u_j
    double A0 = 0.0, An = 0.0, As = 0.0;
  };

  Parts parts(const std::vector<double>& u, bool with_gradient = true, bool check_tail = true) const {
    const auto uh = t->apply(u, 0.0);
    Parts p;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double q = uh[i] * uh[i];
      p.A0 += o0[i] * q;
      p.An += on[i] * q;
      p.As += os[i] * q;
    }
    if (!(p.A0 > 0.0) || !(p.An > 0.0) || !(p.As > 0.0)) {
      throw NumericalError(NumericalError::Kind::DegenerateInput, "zero profile in the Weinstein ratio");
    }
    if (!std::isfinite(p.A0 + p.An + p.As)) {
      throw NumericalError(NumericalError::Kind::Divergence, "non-finite norm in the Weinstein ratio");
    }
    if (check_tail && low_edge * uh[0] * uh[0] > kLowFrequencyMass * p.An) {
      throw NumericalError(NumericalError::Kind::TailTruncation,
                           "negative-order spectral integrand not decayed at the lowest frequency");
    }
    p.lw = 0.5 * std::log(p.A0) - (1.0 - a) * 0.5 * std::log(p.An) - a * 0.5 * std::log(p.As);
    if (with_gradient) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = uh[i] * (o0[i] / p.A0 - (1.0 - a) * on[i] / p.An - a * os[i] / p.As);
      }
      p.g = t->apply_transpose(v);
    }
    return p;
  }

  // M (p .* M x)
  std::vector<double> smooth(const std::vector<double>& x, const Parts& pt) const {
    auto y = t->apply(x, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] /= 1.0 / pt.A0 + (1.0 - a) * xi_neg[i] / pt.An + a * xi_pos[i] / pt.As;
    }
    return t->apply(y, 0.0);
  }
};

void check_cone(const RadialProfile& u) {
  for (double x : u.values()) {
    if (x < 0.0) throw ParameterError("u >= 0 violated (cone membership)");
  }
  if (u.is_zero()) throw NumericalError(NumericalError::Kind::DegenerateInput, "zero profile");
}

struct Run {
  std::vector<double> u;
  std::vector<double> history;
  double worst_check = 0.0;
  int iters = 0;
  bool converged = false;
};

// Central difference along a random direction, compared with the analytic
// derivative on the scale sum |g_i v_i| (iterates sit close to stationary
// points, where the derivative itself is a cancelling sum near zero).
double fd_mismatch(const Model& m, const std::vector<double>& u, const Model::Parts& pt,
                   std::mt19937_64& rng) {
  const auto& g = m.t->grid();
  std::normal_distribution<double> nd;
  const double umax = *std::max_element(u.begin(), u.end());
  std::vector<double> v(u.size());
  double vmax = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = g.node(i);
    v[i] = nd(rng) * (u[i] + 1e-3 * umax * std::exp(-kPi * r * r));
    vmax = std::max(vmax, std::abs(v[i]));
  }
  // five-point stencil: O(eps^4) truncation, roundoff / eps
  const double eps = 1e-4 * umax / vmax;
  auto at = [&](double t) {
    std::vector<double> x(u);
    for (std::size_t i = 0; i < u.size(); ++i) x[i] += t * v[i];
    return m.parts(x, false, false).lw;
  };
  const double fd = (8.0 * (at(eps) - at(-eps)) - (at(2.0 * eps) - at(-2.0 * eps))) / (12.0 * eps);
  const double an = dot(pt.g, v);
  double scale = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) scale += std::abs(pt.g[i] * v[i]);
  return std::abs(an - fd) / scale;
}

Run ascend(const Model& m, std::vector<double> u, const AscentConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t n = u.size();
  Run run;
  auto pt = m.parts(u);
  run.history.push_back(std::exp(pt.lw));
  std::deque<std::pair<std::vector<double>, std::vector<double>>> mem;
  const double amp0 = *std::max_element(u.begin(), u.end());

  for (int it = 1; it <= cfg.max_iters; ++it) {
    const double umax = *std::max_element(u.begin(), u.end());
    std::vector<char> bind(n);
    std::vector<double> q(n), G(n);
    for (std::size_t i = 0; i < n; ++i) {
      G[i] = pt.g[i] / m.w[i];
      bind[i] = u[i] <= 1e-12 * umax && G[i] < 0.0;
      q[i] = bind[i] ? 0.0 : pt.g[i];
    }
    auto free_dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!bind[i]) s += x[i] * y[i];
      }
      return s;
    };
    struct Coef {
      double alpha, rho;
      std::size_t k;
    };
    std::vector<Coef> coefs;
    for (std::size_t k = mem.size(); k-- > 0;) {
      const auto& [sk, yk] = mem[k];
      const double sy = free_dot(sk, yk);
      if (!(sy > 0.0)) continue;
      const double rho = 1.0 / sy;
      const double al = rho * free_dot(sk, q);
      for (std::size_t i = 0; i < n; ++i) {
        if (!bind[i]) q[i] -= al * yk[i];
      }
      coefs.push_back({al, rho, k});
    }
    for (std::size_t i = 0; i < n; ++i) q[i] = bind[i] ? 0.0 : q[i] / m.w[i];
    auto z = m.smooth(q, pt);
    for (std::size_t i = 0; i < n; ++i) {
      if (bind[i]) z[i] = 0.0;
    }
    for (auto c = coefs.rbegin(); c != coefs.rend(); ++c) {
      const auto& [sk, yk] = mem[c->k];
      const double b = c->rho * free_dot(yk, z);
      for (std::size_t i = 0; i < n; ++i) {
        if (!bind[i]) z[i] += (c->alpha - b) * sk[i];
      }
    }
    if (!(dot(z, pt.g) > 0.0)) {
      for (std::size_t i = 0; i < n; ++i) G[i] = bind[i] ? 0.0 : G[i];
      z = m.smooth(G, pt);
      for (std::size_t i = 0; i < n; ++i) {
        if (bind[i]) z[i] = 0.0;
      }
      mem.clear();
    }

    double step = cfg.step_size;
    std::vector<double> un(n);
    Model::Parts pn;
    bool accepted = false;
    while (step >= 1e-20) {
      for (std::size_t i = 0; i < n; ++i) un[i] = std::max(u[i] + step * z[i], 0.0);
      try {
        pn = m.parts(un);
        if (pn.lw >= pt.lw) {
          accepted = true;
          break;
        }
      } catch (const NumericalError&) {
        // trial left the resolvable set; shorten the step
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!mem.empty()) {  // retry from the preconditioned gradient
        mem.clear();
        continue;
      }
      run.converged = true;  // no ascent step survives at float precision
      break;
    }
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = un[i] - u[i];
      y[i] = -(pn.g[i] - pt.g[i]);
    }
    mem.emplace_back(std::move(s), std::move(y));
    if (static_cast<int>(mem.size()) > cfg.memory) mem.pop_front();
    u.swap(un);
    pt = std::move(pn);
    run.iters = it;

    // amplitude renormalization; W is unchanged, the curvature pairs are not
    const double amp = *std::max_element(u.begin(), u.end());
    if (amp > 2.0 * amp0 || amp < 0.5 * amp0) {
      for (double& x : u) x *= amp0 / amp;
      pt = m.parts(u);
      mem.clear();
    }
    run.history.push_back(std::max(std::exp(pt.lw), run.history.back()));

    if (it % kCheckEvery == 0) run.worst_check = std::max(run.worst_check, fd_mismatch(m, u, pt, rng));
    if (static_cast<int>(run.history.size()) > kStopWindow) {
      const double now = run.history.back();
      const double then = run.history[run.history.size() - 1 - kStopWindow];
      if ((now - then) / now < cfg.tol) {
        run.converged = true;
        break;
      }
    }
  }
  run.worst_check = std::max(run.worst_check, fd_mismatch(m, u, pt, rng));
  run.u = std::move(u);
  return run;
}

// Gaussian times exp(sigma Z) with Z standard normal on knots every
// kNoiseKnot nodes and linear in log r between them.
std::vector<double> initial_profile(const RadialGrid& g, double sigma, std::uint64_t seed) {
  constexpr std::size_t kNoiseKnot = 32;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> knots(g.size() / kNoiseKnot + 2);
  for (double& z : knots) z = nd(rng);
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = g.node(i);
    const std::size_t k = i / kNoiseKnot;
    const double f = static_cast<double>(i % kNoiseKnot) / kNoiseKnot;
    const double z = (1.0 - f) * knots[k] + f * knots[k + 1];
    u[i] = std::max(std::exp(-kPi * r * r) * std::exp(sigma * z), 0.0);
  }
  return u;
}

}  // namespace

double weinstein_ratio(const RadialProfile& u, const ParamSet& ps) {
  check_cone(u);
  const Model m(ps, u.grid_ptr());
  return std::exp(m.parts(u.vec(), false).lw);
}

RadialProfile weinstein_gradient(const RadialProfile& u, const ParamSet& ps) {
  check_cone(u);
  const Model m(ps, u.grid_ptr());
  const auto pt = m.parts(u.vec());
  const double area = Convention::sphere_area(u.dim());
  std::vector<double> G(u.size());
  for (std::size_t i = 0; i < G.size(); ++i) G[i] = pt.g[i] / (area * m.w[i]);
  return RadialProfile(u.grid_ptr(), std::move(G));
}

double weinstein_directional(const RadialProfile& u, const RadialProfile& v, const ParamSet& ps) {
  const auto G = weinstein_gradient(u, ps);
  const auto& w = u.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i) s += w[i] * G[i] * v[i];
  return Convention::sphere_area(u.dim()) * s;
}

RadialProfile project_nonnegative(const RadialProfile& u) {
  return u.map([](double x) { return std::max(x, 0.0); });
}

MaximizerResult maximize_constrained(const ParamSet& ps_in, const AscentConfig& cfg, GridPtr grid) {
  const ParamSet ps = validate_params(ps_in.d, ps_in.r, ps_in.S);
  if (!(cfg.step_size > 0.0)) throw ParameterError("step_size > 0 violated");
  if (!(cfg.tol > 0.0)) throw ParameterError("tol > 0 violated");
  if (cfg.restarts < 1) throw ParameterError("restarts >= 1 violated");
  if (cfg.max_iters < 1) throw ParameterError("max_iters >= 1 violated");
  if (!grid) grid = RadialGrid::standard(ps.d);
  if (grid->dim() != ps.d) throw ParameterError("grid dimension matches d violated");
  const Model m(ps, grid);

  std::vector<std::future<Run>> jobs;
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < cfg.restarts; ++k) {
    const std::uint64_t sd = cfg.seed + 1000003ULL * static_cast<std::uint64_t>(k);
    seeds.push_back(sd);
    const double sigma = k == 0 ? 0.0 : cfg.noise_sigma;  // restart 0 starts from the plain Gaussian
    jobs.push_back(std::async(std::launch::async, [&m, &cfg, grid, sd, sigma] {
      return ascend(m, initial_profile(*grid, sigma, sd), cfg, sd);
    }));
  }
  MaximizerResult res;
  res.params = ps;
  res.grid_meta = grid->meta();
  std::vector<Run> runs;
  for (auto& j : jobs) runs.push_back(j.get());
  std::size_t best = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const double c = runs[k].history.back();
    res.restarts.push_back({seeds[k], c, runs[k].iters, runs[k].converged});
    res.gradient_check = std::max(res.gradient_check, runs[k].worst_check);
    if (c > runs[best].history.back()) best = k;
  }
  Run& win = runs[best];
  res.u_star = RadialProfile(grid, std::move(win.u));
  res.c_hat = weinstein_ratio(res.u_star, ps);
  res.history = std::move(win.history);
  res.history.back() = res.c_hat;
  for (std::size_t i = res.history.size() - 1; i-- > 0;) {
    res.history[i] = std::min(res.history[i], res.history[i + 1]);
  }
  res.converged = win.converged;
  res.iters = win.iters;
  res.seed = seeds[best];
  return res;
}

double annulus_ratio(int n, const ParamSet& ps) {
  if (n < 2) throw ParameterError("n >= 2 violated (n=" + std::to_string(n) + ")");
  const double x = 1.0 / n;
  // int_{1-x}^{1+x} rho^{k-1} drho = ((1+x)^k - (1-x)^k) / k, cancellation-free
  auto I = [&](double a) {
    const double k = 2.0 * a + ps.d;
    const double lo = k * std::log1p(-x), hi = k * std::log1p(x);
    return std::exp(lo) * std::expm1(hi - lo) / k;
  };
  const double t = ps.r / ps.S;
  return std::sqrt(I(ps.r)) / (std::pow(I(0.0), 0.5 * (1.0 - t)) * std::pow(I(ps.S), 0.5 * t));
}

int annulus_sign_changes(int n, const ParamSet& ps, double x_max, int samples) {
  if (n < 2) throw ParameterError("n >= 2 violated (n=" + std::to_string(n) + ")");
  if (!(x_max > 0.0) || samples < 2) throw ParameterError("x_max > 0 and samples >= 2 violated");
  using GL = boost::math::quadrature::gauss<double, 10>;
  const double nu = 0.5 * ps.d - 1.0;
  const double lo = 1.0 - 1.0 / n, hi = 1.0 + 1.0 / n;
  const int panels = 64;
  auto value = [&](double x) {
    double total = 0.0;
    const double pw = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) {
      const double a = lo + k * pw;
      total += GL::integrate(
          [&](double xi) { return std::pow(xi, ps.r + 0.5 * ps.d) * bessel_j(nu, 2.0 * kPi * x * xi); }, a,
          a + pw);
    }
    return 2.0 * kPi * std::pow(x, -nu) * total;
  };
  int changes = 0;
  double prev = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double v = value(x_max * k / samples);
    if (v != 0.0) {
      if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
      prev = v;
    }
  }
  return changes;
}

double holder_proportionality_defect(const RadialProfile& u, const ParamSet& ps) {
  check_cone(u);
  const auto t = HankelTransform::for_grid(u.grid_ptr());
  const auto uh = t->apply(u.vec(), 0.0);
  const auto& g = u.grid();
  const auto& w = g.weights();
  const double a = ps.r / ps.S;
  double fg = 0.0, gg = 0.0, ff = 0.0;
  std::vector<double> f(uh.size()), h(uh.size());
  for (std::size_t i = 0; i < uh.size(); ++i) {
    const double xi = g.node(i);
    const double ph = std::pow(xi, -ps.r) * std::abs(uh[i]);
    f[i] = std::pow(ph, 2.0 - 2.0 * a);
    h[i] = std::pow(xi, 2.0 * ps.r) * std::pow(ph, 2.0 * a);
    fg += w[i] * f[i] * h[i];
    gg += w[i] * h[i] * h[i];
    ff += w[i] * f[i] * f[i];
  }
  if (!(ff > 0.0) || !(gg > 0.0)) throw NumericalError(NumericalError::Kind::DegenerateInput, "zero profile");
  const double c = fg / gg;
  double res = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) res += w[i] * (f[i] - c * h[i]) * (f[i] - c * h[i]);
  return std::sqrt(res / ff);
}

RadialProfile random_cone_profile(const GridPtr& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> nd;
  const int d = grid->dim();
  const int parts = 1 + static_cast<int>(U(rng) * 3.0);
  struct Piece {
    int kind;
    double amp, a, b;
  };
  std::vector<Piece> pcs;
  for (int k = 0; k < parts; ++k) {
    const int kind = static_cast<int>(U(rng) * 3.0);
    const double amp = 0.1 + 0.9 * U(rng);
    if (kind == 0) pcs.push_back({0, amp, 3.0 * U(rng), 0.1 + 1.9 * U(rng)});     // bump: centre, width
    if (kind == 1) pcs.push_back({1, amp, 0.3 + 2.7 * U(rng), std::floor(2.0 + 3.0 * U(rng))});  // cap
    if (kind == 2) pcs.push_back({2, amp, 0.2 + 2.0 * U(rng), d + 2.0 + 4.0 * U(rng)});  // tail
  }
  const double sigma = 0.3 * U(rng);
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = grid->node(i);
    double x = 0.0;
    for (const auto& p : pcs) {
      if (p.kind == 0) x += p.amp * std::exp(-std::pow((r - p.a) / p.b, 2));
      if (p.kind == 1 && r < p.a) x += p.amp * std::pow(1.0 - (r / p.a) * (r / p.a), p.b);
      if (p.kind == 2) x += p.amp * std::pow(1.0 + (r / p.a) * (r / p.a), -0.5 * p.b);
    }
    v[i] = x * std::exp(sigma * nd(rng));
  }
  return RadialProfile(grid, std::move(v));
}

RandomSearchResult random_search(const ParamSet& ps, std::size_t samples, std::uint64_t seed, GridPtr grid) {
  if (!grid) grid = RadialGrid::standard(ps.d);
  const Model m(ps, grid);
  RandomSearchResult out;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto u = random_cone_profile(grid, seed + k);
    try {
      out.best = std::max(out.best, std::exp(m.parts(u.vec(), false).lw));
      ++out.samples;
    } catch (const NumericalError&) {
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace rfl
