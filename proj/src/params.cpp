#include "ladderkit/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ladderkit {

bool step_is_raise(StepKind k) {
  return k == StepKind::AlphaUp || k == StepKind::BetaUp || k == StepKind::ZetaUp;
}

StepKind step_up_kind(StepKind k) {
  switch (k) {
    case StepKind::AlphaDown: return StepKind::AlphaUp;
    case StepKind::BetaDown: return StepKind::BetaUp;
    case StepKind::ZetaDown: return StepKind::ZetaUp;
    default: return k;
  }
}

int step_param_index(StepKind k) {
  switch (k) {
    case StepKind::AlphaUp:
    case StepKind::AlphaDown: return 0;
    case StepKind::BetaUp:
    case StepKind::BetaDown: return 1;
    default: return 2;
  }
}

int step_offset(StepKind k) { return step_is_raise(k) ? 1 : -1; }

std::string step_token(StepKind k) {
  switch (k) {
    case StepKind::AlphaUp: return "a+";
    case StepKind::AlphaDown: return "a-";
    case StepKind::BetaUp: return "b+";
    case StepKind::BetaDown: return "b-";
    case StepKind::ZetaUp: return "z+";
    case StepKind::ZetaDown: return "z-";
  }
  return "?";
}

StepKind step_from_token(const std::string& token) {
  if (token == "a+") return StepKind::AlphaUp;
  if (token == "a-") return StepKind::AlphaDown;
  if (token == "b+") return StepKind::BetaUp;
  if (token == "b-") return StepKind::BetaDown;
  if (token == "z+") return StepKind::ZetaUp;
  if (token == "z-") return StepKind::ZetaDown;
  throw std::invalid_argument("unknown step token '" + token + "'");
}

ParamPoint ParamPoint::chg(Complex alpha, Complex beta) {
  return ParamPoint{Family::Chg, alpha, beta, Complex{}};
}

ParamPoint ParamPoint::hg(Complex alpha, Complex beta, Complex zeta) {
  return ParamPoint{Family::Hg, alpha, beta, zeta};
}

Complex ParamPoint::param(int index) const {
  switch (index) {
    case 0: return alpha;
    case 1: return beta;
    case 2:
      if (family != Family::Hg)
        throw std::invalid_argument("zeta is undefined for the confluent family");
      return zeta;
    default: throw std::invalid_argument("parameter index out of range");
  }
}

ParamPoint ParamPoint::shifted(int param_index, int delta) const {
  ParamPoint p = *this;
  const Complex d(static_cast<double>(delta), 0.0);
  switch (param_index) {
    case 0: p.alpha += d; break;
    case 1: p.beta += d; break;
    case 2:
      if (family != Family::Hg)
        throw std::invalid_argument("zeta step on the confluent family");
      p.zeta += d;
      break;
    default: throw std::invalid_argument("parameter index out of range");
  }
  return p;
}

bool ParamPoint::operator==(const ParamPoint& o) const {
  if (family != o.family || alpha != o.alpha || beta != o.beta) return false;
  return family == Family::Chg || zeta == o.zeta;
}

std::string ParamPoint::to_string() const {
  std::ostringstream os;
  os << (family == Family::Chg ? "chg(" : "hg(") << alpha.real();
  if (alpha.imag() != 0.0) os << (alpha.imag() < 0 ? "" : "+") << alpha.imag() << "i";
  os << ", " << beta.real();
  if (beta.imag() != 0.0) os << (beta.imag() < 0 ? "" : "+") << beta.imag() << "i";
  if (family == Family::Hg) {
    os << ", " << zeta.real();
    if (zeta.imag() != 0.0) os << (zeta.imag() < 0 ? "" : "+") << zeta.imag() << "i";
  }
  os << ")";
  return os.str();
}

RationalFn ModelSpec::log_deriv_m() const {
  if (point.family == Family::Chg) {
    // beta/t - 1
    return RationalFn::monomial(point.beta, -1, 0) + RationalFn::constant(Complex(-1.0, 0.0));
  }
  // zeta/t - (alpha + beta - zeta + 1)/(1 - t)
  const Complex d = point.alpha + point.beta - point.zeta + Complex(1.0, 0.0);
  return RationalFn::monomial(point.zeta, -1, 0) + RationalFn::monomial(-d, 0, -1);
}

RationalFn ModelSpec::potential() const {
  if (point.family == Family::Chg) return RationalFn::monomial(point.alpha, -1, 0);
  return RationalFn::monomial(point.alpha * point.beta, -1, -1);
}

Monomial ModelSpec::mass_ratio_unit(StepKind kind) const {
  const Complex one(1.0, 0.0);
  if (point.family == Family::Chg) {
    switch (step_up_kind(kind)) {
      case StepKind::AlphaUp: return Monomial{one, 0, 0};
      case StepKind::BetaUp: return Monomial{one, -1, 0};  // t^beta / t^(beta+1)
      default: throw std::invalid_argument("zeta step on the confluent family");
    }
  }
  switch (step_up_kind(kind)) {
    case StepKind::AlphaUp:
    case StepKind::BetaUp: return Monomial{one, 0, -1};   // (1-t)^-1
    case StepKind::ZetaUp: return Monomial{one, -1, 1};   // t^-1 (1-t)
    default: break;
  }
  throw std::invalid_argument("unsupported step kind");
}

Complex ModelSpec::mass(Complex t) const {
  if (point.family == Family::Chg) {
    if (!(t.imag() == 0.0) || !(t.real() > 0.0))
      throw std::domain_error("weight m(t): confluent family needs real t > 0");
    return std::pow(t, point.beta) * std::exp(-t);
  }
  if (!(t.imag() == 0.0) || !(t.real() > 0.0) || !(t.real() < 1.0))
    throw std::domain_error("weight m(t): Gauss family needs real t in (0,1)");
  const Complex one(1.0, 0.0);
  return std::pow(t, point.zeta) * std::pow(one - t, point.alpha + point.beta - point.zeta + one);
}

}  // namespace ladderkit
