#include "rfl/report.hpp"

#include <cmath>

#include "rfl/operators.hpp"

namespace rfl {

namespace {

// JSON has no infinity; unbounded quantities are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const ParamSet& ps) {
  return Json{{"d", ps.d}, {"r", ps.r}, {"S", ps.S}, {"alpha", ps.alpha}, {"s", ps.s}};
}

Json to_json(const PInterval& iv) {
  return Json{{"lower", iv.lower},
              {"lower_included", false},
              {"upper", iv.upper ? Json(*iv.upper) : Json(nullptr)},
              {"upper_included", iv.upper.has_value()}};
}

Json to_json(const SigmaResult& s) {
  return Json{{"delta", s.delta},
              {"sigma", s.sigma},
              {"interval", Json::array({s.sigma_lower, s.sigma_upper})}};
}

Json to_json(const ExponentReport& rep) {
  return Json{{"params", to_json(rep.params)},
              {"p0", rep.p0},
              {"p_range", to_json(rep.range)},
              {"theta_range", Json::array({rep.theta_lower, rep.theta_upper})},
              {"sigma", to_json(rep.sigma)}};
}

Json to_json(const GridMeta& m) {
  return Json{{"d", m.d}, {"kind", m.kind}, {"r_min", m.r_min}, {"r_max", m.r_max}, {"N", m.n}};
}

Json to_json(const NamedValues& v) {
  Json out = Json::object();
  for (const auto& [k, x] : v) out[k] = number(x);
  return out;
}

Json to_json(const BoundProbeReport& rep) {
  Json samples = Json::array();
  for (const auto& s : rep.samples) samples.push_back(Json::array({number(s.param), number(s.ratio)}));
  return Json{{"probe", rep.probe},
              {"params", to_json(rep.params)},
              {"samples", samples},
              {"sup_ratio", number(rep.sup_ratio)},
              {"passed", rep.passed},
              {"degenerate", rep.degenerate},
              {"thresholds", to_json(rep.thresholds)},
              {"metrics", to_json(rep.metrics)}};
}

Json to_json(const DecayFit& fit) {
  return Json{{"sigma_hat", fit.below_floor ? Json("inf") : number(fit.sigma_hat)},
              {"c_hat", fit.c_hat},
              {"window", Json::array({fit.window_lo, fit.window_hi})},
              {"residual", fit.residual},
              {"points", fit.points},
              {"sign_changes", fit.sign_changes},
              {"power_law_regime", fit.power_law_regime},
              {"below_floor", fit.below_floor}};
}

Json to_json(const TailMass& m) {
  return Json{{"interior_sq", m.interior_sq}, {"exterior_sq", m.exterior_sq}, {"total_sq", m.total_sq}};
}

Json to_json(const MaximizerResult& res) {
  Json restarts = Json::array();
  for (const auto& r : res.restarts) {
    restarts.push_back(Json{{"seed", r.seed}, {"c_hat", r.c_hat}, {"iters", r.iters}, {"converged", r.converged}});
  }
  return Json{{"params", to_json(res.params)},
              {"c_hat", res.c_hat},
              {"iters", res.iters},
              {"converged", res.converged},
              {"gradient_check", res.gradient_check},
              {"grid_meta", to_json(res.grid_meta)},
              {"seed", res.seed},
              {"restarts", restarts},
              {"history_length", res.history.size()}};
}

Json convention_record(int d, double alpha) {
  const bool defined = alpha > 0.0 && alpha < d;
  return Json{{"fourier", Convention::fourier},
              {"sphere_area", Convention::sphere_area(d)},
              {"riesz_constant_formula", Convention::riesz_constant_formula},
              {"riesz_constant", defined ? number(Convention::riesz_constant(alpha, d)) : Json(nullptr)},
              {"riesz_constant_alternative_formula", "pi^(d/2)*Gamma((d-alpha)/2)/Gamma(alpha/2)"},
              {"riesz_constant_alternative",
               defined ? number(Convention::riesz_constant_alternative(alpha, d)) : Json(nullptr)},
              {"in_force", "riesz_constant"}};
}

}  // namespace rfl
