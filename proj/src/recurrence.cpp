#include "ladderkit/recurrence.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ladderkit::recurrence {

namespace {

const Complex kOne(1.0, 0.0);
const Complex kZero(0.0, 0.0);

void require_nondegenerate(const GenFnCoeffs& coeffs, const char* where) {
  if (coeffs.degenerate) {
    std::ostringstream os;
    os << where << ": gamma = 0 at " << coeffs.source.to_string()
       << "; the ladder relation degenerates into a constraint";
    throw degeneracy_error(os.str());
  }
}

}  // namespace

Complex apply_raise(const LadderStep& step, Complex q, Complex dq, Complex t) {
  require_nondegenerate(step.coeffs, "apply_raise");
  const GenFnCoeffs& c = step.coeffs;
  return (c.b.value_at(t) * q + c.a.value_at(t) * dq) / c.gamma;
}

Complex apply_lower(const LadderStep& step, Complex q_t, Complex dq_t, Complex t) {
  require_nondegenerate(step.coeffs, "apply_lower");
  const GenFnCoeffs& c = step.coeffs;
  const ModelSpec model = ModelSpec::for_point(c.source);
  const Complex ratio_inv = model.mass_ratio_inverse(c.step).value_at(t);  // m~/m
  return (c.c.value_at(t) * q_t - c.a.value_at(t) * ratio_inv * dq_t) / c.gamma;
}

Complex three_term(const GenFnCoeffs& first, const GenFnCoeffs& second,
                   Complex q_k, Complex q_k1, Complex t) {
  if (second.source != first.target())
    throw std::invalid_argument("three_term: steps do not chain");
  require_nondegenerate(second, "three_term");
  const ModelSpec model = ModelSpec::for_point(first.source);
  const Complex r = model.mass_ratio_inverse(first.step).value_at(t);  // m_{K+1}/m_K

  const Complex a1 = first.a.value_at(t);
  const Complex a2 = second.a.value_at(t);
  if (a1 == kZero || a2 == kZero)
    throw std::domain_error("three_term: a(t) = 0");

  const Complex w_prev = first.gamma / a1;
  const Complex w_mid = first.c.value_at(t) / a1 + r * second.b.value_at(t) / a2;
  const Complex w_next = r * second.gamma / a2;
  return (w_mid * q_k1 - w_prev * q_k) / w_next;
}

ComposedForm to_composed(const GenFnCoeffs& coeffs) {
  ComposedForm f;
  f.a = coeffs.a;
  f.b = coeffs.b;
  f.c = coeffs.c;
  f.gamma = RationalFn::constant(coeffs.gamma);
  f.source = coeffs.source;
  f.target = coeffs.target();
  f.mass_ratio_inv = ModelSpec::for_point(coeffs.source).mass_ratio_inverse(coeffs.step);
  return f;
}

ComposedForm inverse_form(const GenFnCoeffs& coeffs) {
  const ModelSpec model = ModelSpec::for_point(coeffs.source);
  ComposedForm f;
  f.a = -(coeffs.a * model.mass_ratio_inverse(coeffs.step));
  f.b = coeffs.c;
  f.c = coeffs.b;
  f.gamma = RationalFn::constant(coeffs.gamma);
  f.source = coeffs.target();
  f.target = coeffs.source;
  f.mass_ratio_inv = model.mass_ratio(coeffs.step);  // m_source/m_target of the inverse
  return f;
}

ComposedForm compose(const ComposedForm& first, const ComposedForm& second) {
  if (second.source != first.target)
    throw std::invalid_argument("compose: steps do not chain");
  if (first.gamma.is_zero() || second.gamma.is_zero())
    throw degeneracy_error("compose: degenerate step in the chain");

  // Stationarity in the intermediate coordinate, all denominators cleared by
  // a1^2 a2^2 (the quadruple is projective).
  const RationalFn& a1 = first.a;
  const RationalFn& a2 = second.a;
  const RationalFn& r1 = first.mass_ratio_inv;
  const RationalFn g1 = first.gamma * first.gamma;
  const RationalFn g2 = second.gamma * second.gamma;

  const RationalFn pivot = a2 * first.c + r1 * a1 * second.b;

  ComposedForm out;
  out.a = a1 * a2 * pivot;
  out.b = (first.b * first.c - g1) * (a2 * a2) + r1 * first.b * second.b * (a1 * a2);
  out.c = r1 * first.c * second.c * (a1 * a2) +
          (r1 * r1) * (second.b * second.c - g2) * (a1 * a1);
  out.gamma = r1 * first.gamma * second.gamma * (a1 * a2);
  out.source = first.source;
  out.target = second.target;
  out.mass_ratio_inv = first.mass_ratio_inv * second.mass_ratio_inv;

  if (out.gamma.is_zero())
    throw degeneracy_error("compose: singular elimination (vanishing cross term)");
  return out;
}

ComposedForm compose(const GenFnCoeffs& first, const GenFnCoeffs& second) {
  return compose(to_composed(first), to_composed(second));
}

Complex ComposedForm::eval_raise(Complex q, Complex dq, Complex t) const {
  const Complex g = gamma.value_at(t);
  if (g == kZero)
    throw degeneracy_error("ComposedForm::eval_raise: gamma(t) = 0");
  return (b.value_at(t) * q + a.value_at(t) * dq) / g;
}

Complex raise_factor(StepKind kind, const ParamPoint& p) {
  switch (step_up_kind(kind)) {
    case StepKind::AlphaUp:
      return p.alpha;
    case StepKind::BetaUp:
      if (p.family == Family::Chg) return (p.alpha - p.beta) / p.beta;
      return p.beta;
    case StepKind::ZetaUp:
      return (p.zeta - p.alpha) * (p.zeta - p.beta) / p.zeta;
    default:
      throw std::invalid_argument("raise_factor: unsupported step kind");
  }
}

Complex lower_factor(StepKind kind, const ParamPoint& p) {
  switch (step_up_kind(kind)) {
    case StepKind::AlphaUp:
      if (p.family == Family::Chg) return p.alpha - p.beta + kOne;
      return p.alpha - p.zeta + kOne;
    case StepKind::BetaUp:
      if (p.family == Family::Chg) return -p.beta;
      return p.beta - p.zeta + kOne;
    case StepKind::ZetaUp:
      return -p.zeta;
    default:
      throw std::invalid_argument("lower_factor: unsupported step kind");
  }
}

Complex normalization_value(StepKind kind, const ParamPoint& p) {
  using specfun::gamma;
  using specfun::gamma_reciprocal;
  const double pi = std::numbers::pi;
  // reciprocal gamma handles denominator poles by continuity (multiplier 0);
  // numerator poles stay hard errors
  switch (step_up_kind(kind)) {
    case StepKind::AlphaUp:
      if (p.family == Family::Chg)
        return std::sqrt(gamma(p.alpha) * gamma_reciprocal(p.alpha - p.beta + kOne));
      return std::sqrt(gamma(p.alpha) * gamma_reciprocal(p.alpha - p.zeta + kOne));
    case StepKind::BetaUp:
      if (p.family == Family::Chg)
        return std::exp(Complex(0.0, pi) * p.beta) * std::sqrt(gamma(p.beta - p.alpha)) *
               gamma_reciprocal(p.beta);
      return std::sqrt(gamma(p.beta) * gamma_reciprocal(p.beta - p.zeta + kOne));
    case StepKind::ZetaUp:
      return std::exp(Complex(0.0, -0.5 * pi) * p.zeta) *
             std::sqrt(gamma(p.zeta - p.alpha) * gamma(p.zeta - p.beta)) *
             gamma_reciprocal(p.zeta);
    default:
      throw std::invalid_argument("normalization_value: unsupported step kind");
  }
}

Complex normalization_n(StepKind kind, const ParamPoint& p) {
  const Complex psi = normalization_value(kind, p);
  return psi * psi;
}

Complex canonical_solution(const ParamPoint& p, Complex t, Complex c, StepKind kind,
                           double tol) {
  return c * normalization_value(kind, p) * specfun::series_value(p, t, tol).value;
}

Complex canonical_solution_dt(const ParamPoint& p, Complex t, Complex c, StepKind kind,
                              double tol) {
  return c * normalization_value(kind, p) * specfun::series_dt(p, t, tol).value;
}

}  // namespace ladderkit::recurrence
