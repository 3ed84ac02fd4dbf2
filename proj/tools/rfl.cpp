// rfl: command-line front end for the radial fractional-Laplacian toolkit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rfl/corpus.hpp"
#include "rfl/estimates.hpp"
#include "rfl/exponents.hpp"
#include "rfl/maximizer.hpp"
#include "rfl/operators.hpp"
#include "rfl/report.hpp"
#include "rfl/selftest.hpp"

namespace {

using rfl::Json;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitParam = 2;

struct Common {
  std::string format = "json";
  std::string output;
  std::optional<std::size_t> n;
  std::optional<double> r_min;
  std::optional<double> r_max;
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t resolved_n(const Common& c) {
  if (c.n) return *c.n;
  if (const char* env = std::getenv("RFL_GRID_N")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 16) throw rfl::ParameterError("RFL_GRID_N must be an integer >= 16");
    return static_cast<std::size_t>(v);
  }
  return rfl::kDefaultGridSize;
}

rfl::GridPtr make_grid(int d, const Common& c) {
  const std::size_t n = resolved_n(c);
  if (n < 16) throw rfl::ParameterError("N >= 16 violated");
  if (!c.r_min && !c.r_max) return rfl::RadialGrid::standard(d, n);
  const double lo = c.r_min.value_or(rfl::kDefaultRMin);
  const double hi = c.r_max.value_or(rfl::kDefaultRMax);
  if (!(lo > 0.0) || !(hi > 1.0) || !(lo < 1.0)) throw rfl::ParameterError("0 < r_min < 1 < r_max violated");
  return rfl::RadialGrid::anchored(d, lo, hi, n);
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + c.output);
  f << text;
}

void emit_json(const Common& c, const Json& j) { emit(c, j.dump(2) + "\n"); }

Json envelope(const std::string& command, Json config, const rfl::GridPtr& grid, std::optional<double> alpha) {
  Json j;
  j["command"] = command;
  j["config"] = std::move(config);
  if (grid) j["grid_meta"] = rfl::to_json(grid->meta());
  if (grid && alpha) j["convention"] = rfl::convention_record(grid->dim(), *alpha);
  return j;
}

void add_common(CLI::App* app, Common& c, bool grid_flags = true) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--output,-o", c.output, "Write to this file instead of stdout");
  if (grid_flags) {
    app->add_option("--N", c.n, "Grid size (overrides RFL_GRID_N)");
    app->add_option("--r-min", c.r_min, "Smallest grid radius");
    app->add_option("--r-max", c.r_max, "Largest grid radius");
  }
}

Json grid_config(const Common& c, int d) {
  const auto g = make_grid(d, c);
  return Json{{"N", g->size()}, {"r_min", g->r_min()}, {"r_max", g->r_max()}, {"format", c.format}};
}

// ---- exponents --------------------------------------------------------------

struct ExponentsArgs {
  int d = 5;
  double r = 2.0;
  double S = 3.0;
  std::optional<double> delta;
};

int cmd_exponents(const ExponentsArgs& a, const Common& c) {
  const auto ps = rfl::validate_params(a.d, a.r, a.S);
  const auto rep = rfl::make_exponent_report(ps, a.delta);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "d,r,S,alpha,s,p0,p_upper,theta_lower,theta_upper,delta,sigma,sigma_lower,sigma_upper\n";
    os << ps.d << ',' << g17(ps.r) << ',' << g17(ps.S) << ',' << g17(ps.alpha) << ',' << g17(ps.s) << ','
       << g17(rep.p0) << ',' << (rep.range.upper ? g17(*rep.range.upper) : std::string("inf")) << ','
       << g17(rep.theta_lower) << ',' << g17(rep.theta_upper) << ',' << g17(rep.sigma.delta) << ','
       << g17(rep.sigma.sigma) << ',' << g17(rep.sigma.sigma_lower) << ',' << g17(rep.sigma.sigma_upper) << '\n';
    emit(c, os.str());
    return kExitOk;
  }
  Json cfg{{"d", a.d}, {"r", a.r}, {"S", a.S}, {"delta", rep.sigma.delta}, {"format", c.format}};
  Json j = envelope("exponents", cfg, nullptr, std::nullopt);
  j["result"] = rfl::to_json(rep);
  emit_json(c, j);
  return kExitOk;
}

// ---- figure1 ----------------------------------------------------------------

struct Figure1Args {
  double s_min = 2.6;
  double s_max = 12.0;
  int steps = 200;
};

int cmd_figure1(const Figure1Args& a, const Common& c) {
  if (!(a.s_min > 2.5) || !(a.s_min < a.s_max)) {
    throw rfl::ParameterError("2.5 < S_min < S_max violated (S_min=" + g17(a.s_min) + ", S_max=" + g17(a.s_max) + ")");
  }
  if (a.steps < 1) throw rfl::ParameterError("steps >= 1 violated");
  std::vector<std::pair<double, double>> rows;
  for (int k = 0; k <= a.steps; ++k) {
    const double S = k == a.steps ? a.s_max : a.s_min + (a.s_max - a.s_min) * k / a.steps;
    rows.emplace_back(S, rfl::lower_endpoint_p0(rfl::validate_params(5, 2.0, S)));
  }
  if (c.format == "json") {
    Json pts = Json::array();
    for (const auto& [S, p] : rows) pts.push_back(Json::array({S, p}));
    Json j = envelope("figure1", Json{{"S_min", a.s_min}, {"S_max", a.s_max}, {"steps", a.steps}}, nullptr,
                      std::nullopt);
    j["result"] = Json{{"columns", Json::array({"S", "p0"})}, {"rows", pts}};
    emit_json(c, j);
    return kExitOk;
  }
  std::ostringstream os;
  os << "S,p0\n";
  for (const auto& [S, p] : rows) os << g17(S) << ',' << g17(p) << '\n';
  emit(c, os.str());
  return kExitOk;
}

// ---- selftest ---------------------------------------------------------------

int cmd_selftest(int d, const Common& c) {
  const auto grid = make_grid(d, c);
  const auto checks = rfl::run_selftest(grid);
  bool ok = true;
  for (const auto& x : checks) ok = ok && x.passed;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "check,measured,threshold,passed\n";
    for (const auto& x : checks) {
      os << x.name << ',' << g17(x.measured) << ',' << g17(x.threshold) << ',' << (x.passed ? 1 : 0) << '\n';
    }
    emit(c, os.str());
  } else {
    Json list = Json::array();
    for (const auto& x : checks) {
      Json e{{"check", x.name},
             {"measured", std::isfinite(x.measured) ? Json(x.measured) : Json(nullptr)},
             {"threshold", x.threshold},
             {"passed", x.passed}};
      if (!x.note.empty()) e["note"] = x.note;
      list.push_back(e);
    }
    Json cfg = grid_config(c, d);
    cfg["d"] = d;
    Json j = envelope("selftest", cfg, grid, 0.5 * d + 0.1);
    j["result"] = Json{{"passed", ok}, {"checks", list}};
    emit_json(c, j);
  }
  for (const auto& x : checks) {
    if (!x.passed) {
      std::cerr << "FAILED " << x.name << ": measured " << g17(x.measured) << " vs threshold " << g17(x.threshold)
                << (x.note.empty() ? "" : " (" + x.note + ")") << '\n';
    }
  }
  return ok ? kExitOk : kExitCheck;
}

// ---- decay ------------------------------------------------------------------

struct DecayArgs {
  int d = 5;
  double alpha = 3.0;
  double s = 1.0;
  std::string input = "gaussian";
  double lo = 8.0;
  double hi = 200.0;
};

int cmd_decay(const DecayArgs& a, const Common& c) {
  const auto ps = rfl::params_from_alpha(a.d, a.alpha, a.s);
  const auto grid = make_grid(a.d, c);
  const auto norm = rfl::normalize_to_unit(rfl::named_profile(a.input, grid), a.alpha, a.s);
  const auto fit = rfl::tail_decay_fit(norm.u, {a.lo, a.hi});
  const double sigma_min = (2.0 * ps.s * (0.5 * a.d - 1.0) + 0.5 * a.d) / (2.0 * ps.s + 1.0);
  const double tol = 0.1;
  const bool passed = fit.sigma_hat >= sigma_min - tol;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "input,sigma_hat,c_hat,window_lo,window_hi,residual,sigma_min,passed\n";
    os << a.input << ',' << g17(fit.sigma_hat) << ',' << g17(fit.c_hat) << ',' << g17(fit.window_lo) << ','
       << g17(fit.window_hi) << ',' << g17(fit.residual) << ',' << g17(sigma_min) << ',' << (passed ? 1 : 0) << '\n';
    emit(c, os.str());
  } else {
    Json cfg = grid_config(c, a.d);
    cfg.update(Json{{"d", a.d}, {"alpha", a.alpha}, {"s", a.s}, {"input", a.input}});
    Json j = envelope("decay", cfg, grid, a.alpha);
    j["result"] = rfl::to_json(fit);
    j["normalization"] = Json{{"lambda", norm.lambda}, {"mu", norm.mu}, {"sobolev", norm.sobolev}, {"riesz", norm.riesz}};
    j["thresholds"] = Json{{"sigma_min", sigma_min}, {"tolerance", tol}, {"residual_cap", rfl::kResidualCap}};
    j["passed"] = passed;
    emit_json(c, j);
  }
  return passed ? kExitOk : kExitCheck;
}

// ---- probes -----------------------------------------------------------------

struct ProbeArgs {
  std::string name = "dalbass";
  int d = 5;
  double alpha = 3.0;
  double s = 1.0;
  double q = 2.0;
  double delta = 0.5;
  double r = 1.2;
  double gamma = 6.0;
  double b = -1.0;
  double R = 1.0;
  std::string side = "exterior";
  std::optional<std::string> input;
  double lo = 0.01;
  double hi = 500.0;
};

std::string probe_csv(const rfl::BoundProbeReport& rep) {
  std::ostringstream os;
  os << "param,ratio\n";
  for (const auto& s : rep.samples) os << g17(s.param) << ',' << g17(s.ratio) << '\n';
  return os.str();
}

int cmd_probes(const ProbeArgs& a, const Common& c) {
  const auto grid = make_grid(a.d, c);
  Json cfg = grid_config(c, a.d);
  cfg.update(Json{{"name", a.name}, {"d", a.d}});
  std::vector<rfl::BoundProbeReport> reports;
  std::optional<double> alpha_rec;

  if (a.name == "claimb") {
    const std::string in = a.input.value_or("borderline");
    cfg.update(Json{{"s", a.s}, {"input", in}, {"R", Json::array({0.5, 1.0, 2.0})}, {"window", Json::array({a.lo, a.hi})}});
    const std::vector<double> Rs{0.5, 1.0, 2.0};
    // Spectrum ~ |xi|^{-(s + d/2 + 0.1)}: just inside H^s, so the bound is nearly attained.
    if (in == "borderline") {
      reports.push_back(rfl::high_freq_decay_probe(rfl::power_spectrum(grid, a.s + 0.5 * a.d + 0.1, 0.1),
                                                   a.s, Rs, {a.lo, a.hi}));
    } else {
      reports.push_back(rfl::high_freq_decay_probe(rfl::named_profile(in, grid), a.s, Rs, {a.lo, a.hi}));
    }
  } else if (a.name == "dalbass") {
    const std::string in = a.input.value_or("gaussian");
    const auto u = rfl::named_profile(in, grid);
    const auto ref = rfl::scaling_invariance_probe(rfl::gaussian(grid), a.alpha, a.delta, a.q);
    const auto p = rfl::scaling_invariance_probe(u, a.alpha, a.delta, a.q, {}, ref.exterior.sup_ratio,
                                                 ref.interior.sup_ratio);
    cfg.update(Json{{"alpha", a.alpha}, {"q", a.q}, {"delta", a.delta}, {"input", in}, {"reference", "gaussian"}});
    reports.push_back(p.exterior);
    reports.push_back(p.interior);
    alpha_rec = a.alpha;
  } else if (a.name == "ball") {
    const std::string in = a.input.value_or("gaussian");
    cfg.update(Json{{"alpha", a.alpha}, {"q", a.q}, {"input", in}});
    reports.push_back(rfl::ball_average_probe(rfl::named_profile(in, grid), a.alpha, a.q));
    alpha_rec = a.alpha;
  } else if (a.name == "weighted-w") {
    const std::string in = a.input.value_or("gaussian");
    if (a.side != "exterior" && a.side != "interior") throw rfl::ParameterError("side in {exterior, interior} violated");
    const auto w = a.side == "exterior" ? rfl::WeightSpec::exterior(a.alpha, a.d, a.q, a.delta, a.R)
                                        : rfl::WeightSpec::interior(a.alpha, a.d, a.q, a.delta, a.R);
    cfg.update(Json{{"alpha", a.alpha}, {"q", a.q}, {"delta", a.delta}, {"R", a.R}, {"side", a.side}, {"input", in}});
    reports.push_back(rfl::weighted_w_probe(rfl::named_profile(in, grid), w, a.alpha, a.q));
    alpha_rec = a.alpha;
  } else if (a.name == "decay-integral") {
    const std::string in = a.input.value_or("gaussian");
    rfl::params_from_alpha(a.d, a.alpha, a.s);
    const auto norm = rfl::normalize_to_unit(rfl::named_profile(in, grid), a.alpha, a.s);
    const double v = rfl::weighted_decay_integral(norm.u, a.alpha, a.delta);
    rfl::BoundProbeReport rep;
    rep.probe = "weighted_decay_integral";
    rep.params = {{"d", a.d}, {"alpha", a.alpha}, {"s", a.s}, {"delta", a.delta}};
    rep.samples.push_back({a.delta, v});
    rep.sup_ratio = v;
    rep.passed = std::isfinite(v);
    rep.metrics = {{"lambda", norm.lambda}, {"mu", norm.mu}, {"sobolev", norm.sobolev}, {"riesz", norm.riesz}};
    cfg.update(Json{{"alpha", a.alpha}, {"s", a.s}, {"delta", a.delta}, {"input", in}});
    reports.push_back(rep);
    alpha_rec = a.alpha;
  } else if (a.name == "dn1") {
    const std::string in = a.input.value_or("ring");
    cfg.update(Json{{"gamma", a.gamma}, {"b", a.b}, {"input", in}});
    reports.push_back(rfl::dn1_kernel_probe(rfl::named_profile(in, grid), a.gamma, a.b));
  } else if (a.name == "commutator" || a.name == "tail-mass") {
    const std::string in = a.input.value_or("gaussian");
    const auto phi = rfl::named_profile(in, grid);
    const std::vector<double> rhos = {8, 16, 32, 64, 128};
    rfl::BoundProbeReport rep;
    rep.params = {{"d", a.d}, {"r", a.r}};
    std::vector<double> ys;
    for (double rho : rhos) {
      const double y = a.name == "commutator" ? rfl::commutator_residual(phi, a.r, rho, {})
                                              : rfl::exterior_tail_mass(phi, a.r, rho);
      rep.samples.push_back({rho, y});
      ys.push_back(y);
    }
    rep.sup_ratio = *std::max_element(ys.begin(), ys.end());
    if (a.name == "commutator") {
      rep.probe = "commutator_residual";
      const double slope = -rfl::loglog_slope(rhos, ys);
      rep.metrics = {{"decay_slope", slope}};
      rep.thresholds = {{"min_slope", a.r / 4.0 - 0.05}};
      rep.passed = slope >= a.r / 4.0 - 0.05;
    } else {
      rep.probe = "exterior_tail_mass";
      bool dec = true;
      for (std::size_t i = 1; i < ys.size(); ++i) dec = dec && ys[i] <= ys[i - 1];
      rep.passed = dec;
    }
    cfg.update(Json{{"r", a.r}, {"input", in}, {"rho", rhos}});
    reports.push_back(rep);
  } else {
    throw rfl::ParameterError("unknown probe '" + a.name +
                              "' (claimb, dalbass, ball, weighted-w, decay-integral, dn1, commutator, tail-mass)");
  }

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (c.format == "csv") {
    std::string text;
    for (const auto& r : reports) text += probe_csv(r);
    emit(c, text);
  } else {
    Json j = envelope("probes", cfg, grid, alpha_rec.value_or(0.5 * a.d + 0.1));
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(rfl::to_json(r));
    j["result"] = reports.size() == 1 ? list[0] : list;
    j["passed"] = ok;
    emit_json(c, j);
  }
  return ok ? kExitOk : kExitCheck;
}

// ---- maximize ---------------------------------------------------------------

struct MaxArgs {
  int d = 5;
  double r = 2.0;
  double S = 3.0;
  rfl::AscentConfig cfg;
  std::string u_star;
};

int cmd_maximize(MaxArgs a, const Common& c) {
  const auto ps = rfl::validate_params(a.d, a.r, a.S);
  const auto grid = make_grid(a.d, c);
  const auto res = rfl::maximize_constrained(ps, a.cfg, grid);
  if (!a.u_star.empty()) rfl::write_profile(res.u_star, a.u_star);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "iter,ratio\n";
    for (std::size_t i = 0; i < res.history.size(); ++i) os << i << ',' << g17(res.history[i]) << '\n';
    emit(c, os.str());
  } else {
    Json cfg = grid_config(c, a.d);
    cfg.update(Json{{"d", a.d},
                    {"r", a.r},
                    {"S", a.S},
                    {"restarts", a.cfg.restarts},
                    {"seed", a.cfg.seed},
                    {"max_iters", a.cfg.max_iters},
                    {"tol", a.cfg.tol},
                    {"step_size", a.cfg.step_size}});
    Json j = envelope("maximize", cfg, grid, ps.alpha);
    j["result"] = rfl::to_json(res);
    emit_json(c, j);
  }
  if (!res.converged) std::cerr << "warning: ascent stopped at max_iters before the tolerance was met\n";
  return kExitOk;
}

// ---- profile ----------------------------------------------------------------

int cmd_profile(const std::string& name, int d, const Common& c) {
  const auto grid = make_grid(d, c);
  const auto u = rfl::named_profile(name, grid);
  if (c.format == "csv") {
    emit(c, rfl::to_csv(u));
  } else {
    Json cfg = grid_config(c, d);
    cfg.update(Json{{"d", d}, {"name", name}});
    Json j = envelope("profile", cfg, grid, std::nullopt);
    j["result"] = Json{{"r", grid->nodes()}, {"value", u.vec()}};
    emit_json(c, j);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial fractional Laplacian toolkit"};
  app.require_subcommand(1);

  Common common;

  ExponentsArgs ea;
  auto* ex = app.add_subcommand("exponents", "Exponent report for (d, r, S)");
  ex->add_option("--d", ea.d)->required();
  ex->add_option("--r", ea.r)->required();
  ex->add_option("--S", ea.S)->required();
  ex->add_option("--delta", ea.delta);
  add_common(ex, common, false);

  Figure1Args fa;
  auto* f1 = app.add_subcommand("figure1", "Lower endpoint curve for d = 5, r = 2");
  f1->add_option("--S-min", fa.s_min);
  f1->add_option("--S-max", fa.s_max);
  f1->add_option("--steps", fa.steps);
  add_common(f1, common, false);

  int st_d = 5;
  auto* st = app.add_subcommand("selftest", "Transform and operator cross-checks");
  st->add_option("--d", st_d);
  add_common(st, common);

  DecayArgs da;
  auto* de = app.add_subcommand("decay", "Tail exponent of a normalized profile");
  de->add_option("--d", da.d);
  de->add_option("--alpha", da.alpha);
  de->add_option("--s", da.s);
  de->add_option("--input", da.input)->check(CLI::IsMember(rfl::named_profile_names()));
  de->add_option("--window-lo", da.lo);
  de->add_option("--window-hi", da.hi);
  add_common(de, common);

  ProbeArgs pa;
  auto* pr = app.add_subcommand("probes", "Inequality probes");
  pr->add_option("--name", pa.name);
  pr->add_option("--d", pa.d);
  pr->add_option("--alpha", pa.alpha);
  pr->add_option("--s", pa.s);
  pr->add_option("--q", pa.q);
  pr->add_option("--delta", pa.delta);
  pr->add_option("--r", pa.r);
  pr->add_option("--gamma", pa.gamma);
  pr->add_option("--b", pa.b);
  pr->add_option("--R", pa.R);
  pr->add_option("--side", pa.side);
  auto probe_inputs = rfl::named_profile_names();
  probe_inputs.push_back("borderline");
  pr->add_option("--input", pa.input)->check(CLI::IsMember(probe_inputs));
  pr->add_option("--window-lo", pa.lo);
  pr->add_option("--window-hi", pa.hi);
  add_common(pr, common);

  MaxArgs ma;
  auto* mx = app.add_subcommand("maximize", "Constrained best constant by projected ascent");
  mx->add_option("--d", ma.d);
  mx->add_option("--r", ma.r);
  mx->add_option("--S", ma.S);
  mx->add_option("--restarts", ma.cfg.restarts);
  mx->add_option("--seed", ma.cfg.seed);
  mx->add_option("--max-iters", ma.cfg.max_iters);
  mx->add_option("--tol", ma.cfg.tol);
  mx->add_option("--step-size", ma.cfg.step_size);
  mx->add_option("--u-star", ma.u_star, "Write the maximizing profile (CSV plus JSON sidecar)");
  add_common(mx, common);

  std::string pname = "gaussian";
  int p_d = 5;
  auto* pf = app.add_subcommand("profile", "Export a built-in profile");
  pf->add_option("--name", pname)->check(CLI::IsMember(rfl::named_profile_names()));
  pf->add_option("--d", p_d);
  add_common(pf, common);

  // figure1 and profile default to CSV, everything else to JSON
  for (auto* sub : {ex, st, de, pr, mx}) {
    sub->preparse_callback([&common](std::size_t) { common.format = "json"; });
  }
  for (auto* sub : {f1, pf}) {
    sub->preparse_callback([&common](std::size_t) { common.format = "csv"; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParam;
  }

  try {
    if (*ex) return cmd_exponents(ea, common);
    if (*f1) return cmd_figure1(fa, common);
    if (*st) return cmd_selftest(st_d, common);
    if (*de) return cmd_decay(da, common);
    if (*pr) return cmd_probes(pa, common);
    if (*mx) return cmd_maximize(ma, common);
    if (*pf) return cmd_profile(pname, p_d, common);
  } catch (const rfl::ParameterError& e) {
    std::cerr << "parameter rejected: " << e.what() << '\n';
    return kExitParam;
  } catch (const rfl::NumericalError& e) {
    std::cerr << "numerical failure (" << rfl::to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitCheck;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }
  return kExitOk;
}
