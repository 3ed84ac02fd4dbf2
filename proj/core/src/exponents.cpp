#include "rfl/exponents.hpp"

#include <cmath>
#include <sstream>

#include "rfl/error.hpp"

namespace rfl {

namespace {

[[noreturn]] void reject(const std::string& inequality, const std::string& values) {
  throw ParameterError(inequality + " violated (" + values + ")");
}

std::string fmt(const char* a, double x) {
  std::ostringstream os;
  os.precision(17);
  os << a << "=" << x;
  return os.str();
}

}  // namespace

const char* to_string(NumericalError::Kind kind) noexcept {
  switch (kind) {
    case NumericalError::Kind::TailTruncation: return "tail_truncation";
    case NumericalError::Kind::Divergence: return "divergence";
    case NumericalError::Kind::SingularQuadrature: return "singular_quadrature";
    case NumericalError::Kind::GridTooCoarse: return "grid_too_coarse";
    case NumericalError::Kind::DegenerateInput: return "degenerate_input";
    case NumericalError::Kind::NotConverged: return "not_converged";
  }
  return "unknown";
}

ParamSet validate_params(int d, double r, double S) {
  const std::string v = fmt("d", d) + ", " + fmt("r", r) + ", " + fmt("S", S);
  if (!std::isfinite(r) || !std::isfinite(S)) reject("finite r and S", v);
  if (d < 2) reject("d >= 2", v);
  if (!(r > 0.5)) reject("r > 1/2", v);
  if (!(r < 0.5 * d)) reject("r < d/2", v);
  if (!(r < S - 0.5)) reject("r < S - 1/2", v);
  ParamSet ps;
  ps.d = d;
  ps.r = r;
  ps.S = S;
  ps.alpha = d - r;
  ps.s = S - r;
  return ps;
}

ParamSet params_from_alpha(int d, double alpha, double s) {
  const std::string v = fmt("d", d) + ", " + fmt("alpha", alpha) + ", " + fmt("s", s);
  if (!std::isfinite(alpha) || !std::isfinite(s)) reject("finite alpha and s", v);
  if (d < 2) reject("d >= 2", v);
  if (!(alpha > 0.5 * d)) reject("alpha > d/2", v);
  if (!(alpha < d - 0.5)) reject("alpha < d - 1/2", v);
  if (!(s > 0.5)) reject("s > 1/2", v);
  ParamSet ps;
  ps.d = d;
  ps.alpha = alpha;
  ps.s = s;
  ps.r = d - alpha;
  ps.S = s + ps.r;
  return ps;
}

double lower_endpoint_p0(const ParamSet& ps) {
  const double d = ps.d, r = ps.r, S = ps.S;
  const double num = d - 2 * r + 2 * (S - r) * (d - 1);
  const double den = -((S - r) - 0.5) * (d - 2 * r) + 2 * (S - r) * (d - 1);
  return num / den;
}

double lower_endpoint_prad(int d, double alpha, double s) {
  params_from_alpha(d, alpha, s);
  const double a = alpha - 0.5 * d;
  const double num = 2 * a + 2 * s * (d - 1);
  const double den = -(2 * s - 1) * a + 2 * s * (d - 1);
  return num / den;
}

bool PInterval::contains(double p) const {
  if (!(p > lower)) return false;
  return !upper || p <= *upper;
}

PInterval admissible_p_range(const ParamSet& ps) {
  PInterval iv;
  iv.lower = lower_endpoint_p0(ps);
  if (ps.s < 0.5 * ps.d) iv.upper = 2.0 * ps.d / (ps.d - 2.0 * ps.s);
  return iv;
}

double theta_alpha_form(int d, double alpha, double s, double p) {
  // d/p = (1 - theta)((d - alpha) + d/2) + theta (d/2 - s)
  const double a = (d - alpha) + 0.5 * d;
  const double b = 0.5 * d - s;
  return (a - d / p) / (a - b);
}

double theta_from_scaling(const ParamSet& ps, double p) {
  const PInterval iv = admissible_p_range(ps);
  if (!iv.contains(p)) {
    std::ostringstream os;
    os.precision(17);
    os << "p in (p0, p_upper] violated (p=" << p << ", p0=" << iv.lower;
    if (iv.upper) os << ", p_upper=" << *iv.upper;
    os << ")";
    throw ParameterError(os.str());
  }
  const double theta = (ps.r + 0.5 * ps.d - ps.d / p) / ps.S;
  const double check = theta_alpha_form(ps.d, ps.alpha, ps.s, p);
  if (std::abs(theta - check) > 1e-12 * (1.0 + std::abs(theta))) {
    throw NumericalError(NumericalError::Kind::DegenerateInput,
                         "scaling identities disagree for theta");
  }
  // For radial data the range extends below p = 2, where theta < r/S.
  const double lo = (ps.r + 0.5 * ps.d - ps.d / iv.lower) / ps.S;
  if (!(theta > lo) || theta > 1.0 + 1e-14) {
    std::ostringstream os;
    os.precision(17);
    os << "theta in (theta(p0), 1] violated (theta=" << theta << ")";
    throw ParameterError(os.str());
  }
  return theta;
}

SigmaResult sigma_of_delta(const ParamSet& ps, double delta) {
  const double d = ps.d, alpha = ps.alpha, s = ps.s;
  if (!(delta > 0.0) || !(delta < d - alpha)) {
    std::ostringstream os;
    os.precision(17);
    os << "0 < delta < d - alpha violated (delta=" << delta << ", d - alpha=" << d - alpha << ")";
    throw ParameterError(os.str());
  }
  auto sigma_at = [&](double dl) {
    return (-(2 * s - 1) * (alpha - 0.5 * d + dl) + 2 * s * (d - 1)) / (2 * s + 1);
  };
  SigmaResult out;
  out.delta = delta;
  out.sigma = sigma_at(delta);
  out.sigma_upper = sigma_at(0.0);
  out.sigma_lower = (2 * s * (0.5 * d - 1) + 0.5 * d) / (2 * s + 1);
  return out;
}

double default_delta(const ParamSet& ps) { return 1e-6 * (ps.d - ps.alpha); }

ExponentReport make_exponent_report(const ParamSet& ps, std::optional<double> delta) {
  ExponentReport rep;
  rep.params = ps;
  rep.p0 = lower_endpoint_p0(ps);
  rep.range = admissible_p_range(ps);
  rep.theta_lower = (ps.r + 0.5 * ps.d - ps.d / rep.p0) / ps.S;
  rep.theta_upper = rep.range.upper ? 1.0 : (ps.r + 0.5 * ps.d) / ps.S;
  rep.sigma = sigma_of_delta(ps, delta.value_or(default_delta(ps)));
  return rep;
}

double p0_closed_form_d5_r2(double S) { return (16.0 * S - 30.0) / (14.0 * S - 27.0); }

}  // namespace rfl
