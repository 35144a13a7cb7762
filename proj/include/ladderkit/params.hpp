#pragma once

#include <string>

#include "ladderkit/rational_fn.hpp"

namespace ladderkit {

/// Equation family: confluent (two parameters) or Gauss (three parameters).
enum class Family { Chg, Hg };

enum class StepKind { AlphaUp, AlphaDown, BetaUp, BetaDown, ZetaUp, ZetaDown };

bool step_is_raise(StepKind k);
/// AlphaDown -> AlphaUp etc.; up kinds map to themselves.
StepKind step_up_kind(StepKind k);
/// 0 = alpha, 1 = beta, 2 = zeta.
int step_param_index(StepKind k);
/// +1 for up kinds, -1 for down kinds.
int step_offset(StepKind k);
std::string step_token(StepKind k);
/// Parses "a+", "a-", "b+", "b-", "z+", "z-"; throws std::invalid_argument.
StepKind step_from_token(const std::string& token);

/// One knot of the parameter grating: family tag plus alpha, beta and,
/// for the Gauss family only, zeta.
struct ParamPoint {
  Family family = Family::Chg;
  Complex alpha{};
  Complex beta{};
  Complex zeta{};  // meaningful iff family == Hg

  static ParamPoint chg(Complex alpha, Complex beta);
  static ParamPoint hg(Complex alpha, Complex beta, Complex zeta);

  int param_count() const { return family == Family::Hg ? 3 : 2; }
  Complex param(int index) const;

  /// Point with one parameter shifted by delta; throws on a zeta shift
  /// for the confluent family.
  ParamPoint shifted(int param_index, int delta) const;
  ParamPoint shifted(StepKind kind) const { return shifted(step_param_index(kind), step_offset(kind)); }

  bool operator==(const ParamPoint& o) const;
  bool operator!=(const ParamPoint& o) const { return !(*this == o); }

  std::string to_string() const;
};

/**
 * Scalar model data for one knot: the log-derivative of the weight m(t),
 * the potential U(t), and the weight ratio m/m~ across a unit parameter
 * step.  All three are exact rational objects:
 *
 *   confluent: m = t^beta e^-t,              U = alpha / t
 *   Gauss:     m = t^zeta (1-t)^(a+b-z+1),   U = alpha beta / (t (1-t))
 *
 * The exponential and non-integer powers cancel in every ratio the
 * recurrences need, which is what keeps the whole construction rational.
 */
struct ModelSpec {
  ParamPoint point;

  static ModelSpec for_point(const ParamPoint& p) { return ModelSpec{p}; }

  RationalFn log_deriv_m() const;
  RationalFn potential() const;
  /// m/m~ for the unit up-step of `kind` (down kinds use the same grating
  /// direction), as a factored unit of the algebra.
  Monomial mass_ratio_unit(StepKind kind) const;
  RationalFn mass_ratio(StepKind kind) const { return mass_ratio_unit(kind).to_rational(); }
  RationalFn mass_ratio_inverse(StepKind kind) const {
    return mass_ratio_unit(kind).inverse().to_rational();
  }

  /// Closed-form weight m(t) with principal powers; t > 0 for the
  /// confluent family, t in (0,1) for the Gauss family.
  Complex mass(Complex t) const;
};

}  // namespace ladderkit
