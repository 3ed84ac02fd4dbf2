#include "rfl/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rfl/hankel.hpp"
#include "rfl/operators.hpp"
#include "rfl/riesz_direct.hpp"

namespace rfl {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_window(const RadialGrid& g, std::pair<double, double> w) {
  if (!(w.first >= g.r_min()) || !(w.second <= g.r_max()) || !(w.first < w.second)) {
    throw ParameterError("window inside [r_min, r_max] violated (window=[" + num(w.first) + ", " +
                         num(w.second) + "])");
  }
}

void check_radius(const RadialGrid& g, double R) {
  if (!(R >= g.r_min()) || !(R <= g.r_max())) {
    throw ParameterError("R inside [r_min, r_max] violated (R=" + num(R) + ")");
  }
}

double sup_ratio(const std::vector<ProbeSample>& s) {
  double m = 0.0;
  for (const auto& x : s) m = std::max(m, x.ratio);
  return m;
}

bool all_finite(const std::vector<ProbeSample>& s) {
  return std::all_of(s.begin(), s.end(), [](const ProbeSample& x) { return std::isfinite(x.ratio); });
}

RadialProfile high_part(const SpectralProfile& uh, double R) {
  const MollifierSpec psi;
  return hankel_inverse(uh.times([&](double xi) { return 1.0 - psi(R * xi); }));
}

RadialProfile high_part(const RadialProfile& u, double R) { return high_part(hankel_forward(u), R); }

double weighted_sup(const RadialProfile& h, std::pair<double, double> window) {
  const auto& g = h.grid();
  const double e = 0.5 * (g.dim() - 1);
  double m = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = g.node(i);
    if (x < window.first || x > window.second) continue;
    m = std::max(m, std::abs(h[i]) * std::pow(x, e));
  }
  return m;
}

}  // namespace

double smooth_bridge(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

std::vector<double> dyadic_ladder(int lo_exp, int hi_exp) {
  std::vector<double> out;
  for (int k = lo_exp; k <= hi_exp; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ParameterError("log-log fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

FrequencySplit frequency_split(const RadialProfile& u, double R, const MollifierSpec& psi) {
  if (!(R > 0.0)) throw ParameterError("R > 0 violated (R=" + num(R) + ")");
  const SpectralProfile uh = hankel_forward(u);
  const SpectralProfile lh = uh.times([&](double xi) { return psi(R * xi); });
  RadialProfile low = hankel_inverse(lh);
  RadialProfile high = u - low;
  return {std::move(low), std::move(high)};
}

double high_freq_sup(const RadialProfile& u, double R, std::pair<double, double> window) {
  check_window(u.grid(), window);
  if (!(R > 0.0)) throw ParameterError("R > 0 violated (R=" + num(R) + ")");
  if (u.is_zero()) return 0.0;
  return weighted_sup(high_part(u, R), window);
}

double high_freq_sup(const SpectralProfile& uh, double R, std::pair<double, double> window) {
  check_window(uh.grid(), window);
  if (!(R > 0.0)) throw ParameterError("R > 0 violated (R=" + num(R) + ")");
  return weighted_sup(high_part(uh, R), window);
}

double high_freq_ratio(const RadialProfile& u, double s, double R, std::pair<double, double> window) {
  if (!(s > 0.5)) throw ParameterError("s > 1/2 violated (s=" + num(s) + ")");
  const double sup = high_freq_sup(u, R, window);
  if (sup == 0.0) return 0.0;
  return sup / (std::pow(R, s - 0.5) * sobolev_norm(u, s));
}

namespace {

template <class Sup>
BoundProbeReport decay_probe_impl(int d, bool zero, double norm, Sup sup_at, double s,
                                  const std::vector<double>& R_values,
                                  std::pair<double, double> window) {
  if (!(s > 0.5)) throw ParameterError("s > 1/2 violated (s=" + num(s) + ")");
  if (R_values.empty()) throw ParameterError("non-empty R ladder violated");
  BoundProbeReport rep;
  rep.probe = "high_freq_decay";
  rep.params = {{"d", static_cast<double>(d)}, {"s", s}, {"window_lo", window.first}, {"window_hi", window.second}};
  rep.thresholds = {{"stability", kStability}, {"slope_tolerance", kSlopeTolerance},
                    {"expected_slope", s - 0.5}};
  if (zero) {
    for (double R : R_values) rep.samples.push_back({R, 0.0});
    rep.degenerate = true;
    return rep;
  }
  std::vector<double> sups;
  for (double R : R_values) {
    const double sup = sup_at(R);
    sups.push_back(sup);
    rep.samples.push_back({R, sup / (std::pow(R, s - 0.5) * norm)});
  }
  rep.sup_ratio = sup_ratio(rep.samples);
  double log_mean = 0.0;
  bool positive = true;
  for (const auto& x : rep.samples) {
    positive = positive && x.ratio > 0.0;
    log_mean += std::log(std::max(x.ratio, std::numeric_limits<double>::min()));
  }
  const double gm = std::exp(log_mean / static_cast<double>(rep.samples.size()));
  bool stable = positive && all_finite(rep.samples);
  for (const auto& x : rep.samples) {
    stable = stable && std::abs(x.ratio / gm - 1.0) <= kStability;
  }
  rep.passed = stable;
  if (R_values.size() >= 2 && positive) rep.metrics.push_back({"r_slope", loglog_slope(R_values, sups)});
  return rep;
}

}  // namespace

BoundProbeReport high_freq_decay_probe(const RadialProfile& u, double s,
                                       const std::vector<double>& R_values,
                                       std::pair<double, double> window) {
  check_window(u.grid(), window);
  const bool zero = u.is_zero();
  const double norm = zero ? 0.0 : sobolev_norm(u, s);
  const SpectralProfile uh = zero ? SpectralProfile::zeros(u.grid_ptr()) : hankel_forward(u);
  return decay_probe_impl(u.dim(), zero, norm,
                          [&](double R) { return weighted_sup(high_part(uh, R), window); }, s,
                          R_values, window);
}

BoundProbeReport high_freq_decay_probe(const SpectralProfile& uh, double s,
                                       const std::vector<double>& R_values,
                                       std::pair<double, double> window) {
  check_window(uh.grid(), window);
  const bool zero = uh.is_zero();
  const double norm = zero ? 0.0 : spectral_sobolev_norm(uh, s);
  return decay_probe_impl(uh.dim(), zero, norm,
                          [&](double R) { return weighted_sup(high_part(uh, R), window); }, s,
                          R_values, window);
}

DecayFit tail_decay_fit(const RadialProfile& u, std::pair<double, double> window) {
  const auto& g = u.grid();
  check_window(g, window);
  const double floor = 1e-14 * u.max_abs();
  std::vector<double> xs, ys;
  std::size_t changes = 0, window_nodes = 0;
  double prev = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = g.node(i);
    if (r < window.first || r > window.second) continue;
    ++window_nodes;
    if (u[i] != 0.0) {
      if (prev != 0.0 && (u[i] > 0.0) != (prev > 0.0)) ++changes;
      prev = u[i];
    }
    if (std::abs(u[i]) <= floor || u[i] == 0.0) continue;
    xs.push_back(std::log(r));
    ys.push_back(std::log(std::abs(u[i])));
  }
  if (window_nodes < 12) {
    throw NumericalError(NumericalError::Kind::DegenerateInput,
                         "too few grid points in the decay window (" + std::to_string(window_nodes) + " < 12)");
  }
  if (xs.size() < 12) {
    DecayFit fit;
    fit.sigma_hat = INFINITY;
    fit.window_lo = window.first;
    fit.window_hi = window.second;
    fit.points = xs.size();
    fit.sign_changes = changes;
    fit.below_floor = true;
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (icpt + slope * xs[i]);
    ss += e * e;
  }
  DecayFit fit;
  fit.sigma_hat = -slope;
  fit.c_hat = std::exp(icpt);
  fit.window_lo = window.first;
  fit.window_hi = window.second;
  fit.residual = std::sqrt(ss / n);
  fit.points = xs.size();
  fit.sign_changes = changes;
  fit.power_law_regime = fit.residual < kResidualCap;
  return fit;
}

double weighted_tail_integral(const RadialProfile& u, double gamma_w, double R, Side side) {
  const auto& g = u.grid();
  check_radius(g, R);
  const int d = g.dim();
  if (u.is_zero()) return 0.0;
  if (side == Side::inner && u[0] != 0.0 && !(gamma_w < d)) {
    throw NumericalError(NumericalError::Kind::Divergence,
                         "inner weighted integral diverges at the origin (gamma_w >= d)");
  }
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(u[i]) * std::pow(g.node(i), -gamma_w);
  const double a = side == Side::inner ? 0.0 : R;
  const double b = side == Side::inner ? R : INFINITY;
  return Convention::sphere_area(d) * integrate_radial_range(g, f, a, b);
}

ScalingProbe scaling_invariance_probe(const RadialProfile& u, double alpha, double delta, double q,
                                      const std::vector<double>& ladder_in,
                                      double reference_exterior, double reference_interior) {
  const int d = u.dim();
  if (!(q > 1.0)) throw ParameterError("q > 1 violated (q=" + num(q) + ")");
  if (!(alpha > d / q) || !(alpha < d)) {
    throw ParameterError("d/q < alpha < d violated (alpha=" + num(alpha) + ", q=" + num(q) + ")");
  }
  if (!(delta > 0.0)) throw ParameterError("delta > 0 violated (delta=" + num(delta) + ")");
  const std::vector<double> ladder = ladder_in.empty() ? dyadic_ladder(-3, 6) : ladder_in;
  for (double R : ladder) check_radius(u.grid(), R);

  ScalingProbe out;
  out.exterior.probe = "scaling_exterior";
  out.interior.probe = "scaling_interior";
  const NamedValues params = {{"d", d}, {"alpha", alpha}, {"delta", delta}, {"q", q}};
  out.exterior.params = out.interior.params = params;
  out.exterior.thresholds = {{"flatness_factor", kFlatnessFactor}, {"reference_sup", reference_exterior}};
  out.interior.thresholds = {{"flatness_factor", kFlatnessFactor}, {"reference_sup", reference_interior}};

  if (u.is_zero()) {
    for (double R : ladder) {
      out.exterior.samples.push_back({R, 0.0});
      out.interior.samples.push_back({R, 0.0});
    }
    out.exterior.degenerate = out.interior.degenerate = true;
    return out;
  }
  const double norm = riesz_lq_norm(u, alpha, q);
  const double ge = alpha - d / q + delta;
  const double gi = alpha - d / q - delta;
  for (double R : ladder) {
    const double ext = weighted_tail_integral(u, ge, R, Side::outer);
    const double in = weighted_tail_integral(u, gi, R, Side::inner);
    out.exterior.samples.push_back({R, std::pow(R, delta) * ext / norm});
    out.interior.samples.push_back({R, std::pow(R, -delta) * in / norm});
  }
  for (auto* rep : {&out.exterior, &out.interior}) {
    rep->sup_ratio = sup_ratio(rep->samples);
    rep->metrics.push_back({"riesz_lq_norm", norm});
  }
  auto judge = [](BoundProbeReport& rep, double ref) {
    rep.passed = all_finite(rep.samples) && std::isfinite(rep.sup_ratio) &&
                 (ref <= 0.0 || rep.sup_ratio <= kFlatnessFactor * ref);
  };
  judge(out.exterior, reference_exterior);
  judge(out.interior, reference_interior);
  return out;
}

BoundProbeReport ball_average_probe(const RadialProfile& u, double alpha, double q) {
  const auto& g = u.grid();
  const int d = g.dim();
  if (!(q > 1.0)) throw ParameterError("q > 1 violated (q=" + num(q) + ")");
  if (!(alpha > d / q) || !(alpha < d)) {
    throw ParameterError("d/q < alpha < d violated (alpha=" + num(alpha) + ", q=" + num(q) + ")");
  }
  BoundProbeReport rep;
  rep.probe = "ball_average";
  rep.params = {{"d", d}, {"alpha", alpha}, {"q", q}, {"center_offset", 0.0}};
  if (u.is_zero()) {
    rep.samples.push_back({q, 0.0});
    rep.degenerate = true;
    rep.metrics = {{"lhs", 0.0}, {"rhs", 0.0}};
    return rep;
  }
  const std::size_t n = u.size();
  const double h = g.log_step();
  // Cumulative int_0^{r_i} |u| r^{d-1} dr (piecewise-linear in log r plus origin piece).
  std::vector<double> cum(n);
  const double p0 = origin_exponent(g, u.abs().values());
  double acc = std::abs(u[0]) * std::pow(g.r_min(), d) / (d + p0);
  double prev = std::abs(u[0]) * std::pow(g.node(0), d);
  cum[0] = acc;
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = std::abs(u[i]) * std::pow(g.node(i), d);
    acc += 0.5 * h * (prev + cur);
    prev = cur;
    cum[i] = acc;
  }
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = g.node(i);
    const double avg = d * cum[i] / std::pow(rho, d);
    f[i] = std::pow(avg, q) * std::pow(rho, (d - alpha) * q);
  }
  double lhs = 0.0;
  try {
    lhs = integrate_radial(g, f);
  } catch (const NumericalError& e) {
    if (e.kind() != NumericalError::Kind::TailTruncation) throw;
    throw NumericalError(NumericalError::Kind::Divergence, "ball-average integral diverges for this profile");
  }
  const double rhs = std::pow(riesz_lq_norm(u, alpha, q), q);
  rep.samples.push_back({q, lhs / rhs});
  rep.sup_ratio = lhs / rhs;
  rep.passed = std::isfinite(rep.sup_ratio);
  rep.metrics = {{"lhs", lhs}, {"rhs", rhs}};
  return rep;
}

WeightSpec WeightSpec::exterior(double alpha, int d, double q, double delta, double R) {
  return {Side::outer, alpha - d / q + 1.0 + delta, R, 1.0};
}

WeightSpec WeightSpec::interior(double alpha, int d, double q, double delta, double R) {
  return {Side::inner, alpha - d / q + 1.0 - delta, R, 1.0};
}

double WeightSpec::primitive(double rho) const {
  if (scale == 0.0) return 0.0;
  const double e = 1.0 - kappa;
  if (side == Side::outer) {
    const double x = std::max(rho, R);
    return scale * std::pow(x, e) / (kappa - 1.0);
  }
  if (rho >= R) return 0.0;
  if (kappa == 1.0) return scale * std::log(R / rho);
  return scale * (std::pow(rho, e) - std::pow(R, e)) / (kappa - 1.0);
}

BoundProbeReport weighted_w_probe(const RadialProfile& u, const WeightSpec& w, double alpha, double q) {
  const auto& g = u.grid();
  const int d = g.dim();
  if (!(q > 1.0)) throw ParameterError("q > 1 violated (q=" + num(q) + ")");
  check_radius(g, w.R);
  // int |w|^{q'} rho^{(alpha q + 1 - d)/(q - 1)} over the support of w
  const double e = (-w.kappa * q + alpha * q + 1.0 - d) / (q - 1.0);
  if (w.scale != 0.0) {
    const bool ok = w.side == Side::outer ? (e < -1.0 && w.kappa > 1.0) : (e > -1.0);
    if (!ok) {
      throw ParameterError("integrable weight moment violated (exponent " + num(e) +
                           (w.side == Side::outer ? " must be < -1)" : " must be > -1)"));
    }
  }
  BoundProbeReport rep;
  rep.probe = "weighted_w";
  rep.params = {{"d", d},     {"alpha", alpha}, {"q", q},
                {"kappa", w.kappa}, {"R", w.R},  {"side_outer", w.side == Side::outer ? 1.0 : 0.0}};
  if (u.is_zero() || w.scale == 0.0) {
    rep.samples.push_back({w.R, 0.0});
    rep.degenerate = u.is_zero();
    rep.passed = !rep.degenerate;
    rep.metrics = {{"lhs", 0.0}};
    return rep;
  }
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(u[i]) * w.primitive(g.node(i));
  const double lhs = Convention::sphere_area(d) * (integrate_radial_range(g, f, 0.0, w.R) +
                                                   integrate_radial_range(g, f, w.R, INFINITY));
  const double rhs = riesz_lq_norm(u, alpha, q);
  rep.samples.push_back({w.R, lhs / rhs});
  rep.sup_ratio = lhs / rhs;
  rep.passed = std::isfinite(rep.sup_ratio);
  rep.metrics = {{"lhs", lhs}, {"rhs", rhs}, {"moment_exponent", e}};
  return rep;
}

double weighted_decay_integral(const RadialProfile& u, double alpha, double delta) {
  const int d = u.dim();
  if (!(delta > 0.0) || !(delta < d - alpha)) {
    throw ParameterError("0 < delta < d - alpha violated (delta=" + num(delta) + ")");
  }
  if (u.is_zero()) return 0.0;
  const auto& g = u.grid();
  const double gamma = alpha - 0.5 * d + delta;
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(u[i]) * std::pow(g.node(i), -gamma);
  return Convention::sphere_area(d) * integrate_radial(g, f);
}

double power_weighted_l1(const RadialProfile& f, double b) {
  const auto& g = f.grid();
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f[i]) * std::pow(g.node(i), b);
  return Convention::sphere_area(g.dim()) * integrate_radial(g, v);
}

BoundProbeReport dn1_kernel_probe(const RadialProfile& f, double gamma, double b,
                                  const std::vector<double>& x_in) {
  const auto& g = f.grid();
  const int d = g.dim();
  if (!(gamma > d - 1)) throw ParameterError("gamma > d - 1 violated (gamma=" + num(gamma) + ")");
  if (!(b > -(d - 1.0)) || !(b < 0.0)) {
    throw ParameterError("-(d - 1) < b < 0 violated (b=" + num(b) + ")");
  }
  const std::vector<double> xs = x_in.empty() ? dyadic_ladder(-2, 6) : x_in;
  BoundProbeReport rep;
  rep.probe = "dn1_kernel";
  rep.params = {{"d", d}, {"gamma", gamma}, {"b", b}};
  if (f.is_zero()) {
    for (double x : xs) rep.samples.push_back({x, 0.0});
    rep.degenerate = true;
    return rep;
  }
  const double wnorm = power_weighted_l1(f, b);
  const double cutoff = 1e-18 * f.max_abs();
  for (double x : xs) {
    std::vector<double> v(f.size(), 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (std::abs(f[j]) <= cutoff) continue;
      v[j] = f[j] * angular_kernel(x, g.node(j), gamma, d);
    }
    const double lhs = std::abs(integrate_radial(g, v));
    rep.samples.push_back({x, lhs * std::pow(x, d - 1 + b) / wnorm});
  }
  rep.sup_ratio = sup_ratio(rep.samples);
  rep.passed = all_finite(rep.samples);
  rep.metrics = {{"weight_norm", wnorm}};
  return rep;
}

double commutator_residual(const RadialProfile& phi, double r, double rho, const CutoffSpec& theta_in) {
  if (!(r > 0.0) || !(r < 2.0)) throw ParameterError("0 < r < 2 violated (r=" + num(r) + ")");
  if (!(rho >= 1.0)) throw ParameterError("rho >= 1 violated (rho=" + num(rho) + ")");
  if (!(2.0 * rho <= phi.grid().r_max())) {
    throw ParameterError("cutoff support 2 rho <= r_max violated (rho=" + num(rho) + ")");
  }
  CutoffSpec theta = theta_in;
  theta.rho = rho;
  const RadialProfile a = fractional_derivative(phi, r).times(theta);
  const RadialProfile b = fractional_derivative(phi.times(theta), r);
  // The residual is a cancellation of O(||D^r phi||) terms, so its far edge
  // sits at the transform noise floor; an uncontrolled tail contributes nothing.
  const RadialProfile c = a - b;
  std::vector<double> f(c.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = c[i] * c[i];
  TailPolicy tails;
  tails.strict = false;
  return std::sqrt(std::max(0.0, Convention::sphere_area(c.dim()) * integrate_radial(c.grid(), f, tails)));
}

TailMass tail_mass_split(const RadialProfile& phi, double r, double rho) {
  const auto& g = phi.grid();
  check_radius(g, rho);
  const RadialProfile dr = fractional_derivative(phi, r);
  std::vector<double> f(dr.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = dr[i] * dr[i];
  const double c = Convention::sphere_area(g.dim());
  TailMass m;
  m.interior_sq = c * integrate_radial_range(g, f, 0.0, rho);
  m.exterior_sq = c * integrate_radial_range(g, f, rho, INFINITY);
  m.total_sq = c * integrate_radial(g, f);
  return m;
}

double exterior_tail_mass(const RadialProfile& phi, double r, double rho) {
  return std::sqrt(std::max(0.0, tail_mass_split(phi, r, rho).exterior_sq));
}

PqrThreshold pqr_threshold(double p, double q, double rho, double a0, double b0, double g0) {
  if (!(1.0 <= p && p < q && q < rho)) throw ParameterError("1 <= p < q < rho violated");
  if (!(a0 > 0.0) || !(b0 > 0.0) || !(g0 > 0.0)) throw ParameterError("positive budget violated");
  PqrThreshold t;
  // Mass of |f|^q below eta is at most eta^{q-p} a0 = b0/4; above M at most M^{q-rho} g0 = b0/4.
  t.eta = std::pow(b0 / (4.0 * a0), 1.0 / (q - p));
  const double M = std::pow(4.0 * g0 / b0, 1.0 / (rho - q));
  t.c = b0 / (2.0 * std::pow(M, q));
  return t;
}

}  // namespace rfl
