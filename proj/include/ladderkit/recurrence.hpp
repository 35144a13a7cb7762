#pragma once

#include "ladderkit/canonical.hpp"
#include "ladderkit/errors.hpp"
#include "ladderkit/params.hpp"
#include "ladderkit/specfun.hpp"

namespace ladderkit::recurrence {

using canonical::GenFnCoeffs;

enum class StepDirection { Raise, Lower };

/// One ladder application: the coefficients of an elementary step plus
/// the direction it is traversed in.  Lowering requires gamma != 0.
struct LadderStep {
  GenFnCoeffs coeffs;
  StepDirection direction = StepDirection::Raise;
};

/// q~ = (b(t) q + a(t) q') / gamma.  Throws degeneracy_error when gamma = 0.
Complex apply_raise(const LadderStep& step, Complex q, Complex dq, Complex t);

/// q = (c(t) q~ - a(t) (m~/m)(t) q~') / gamma.  The m~/m prefactor is the
/// weight ratio of the step taken from the model data; it is the unique
/// variant consistent with the generating-function relations and the
/// series oracle.
Complex apply_lower(const LadderStep& step, Complex q_t, Complex dq_t, Complex t);

/// Derivative-free three-knot relation.  `first` maps K -> K+1 and
/// `second` maps K+1 -> K+2; given values at K and K+1 it returns the
/// value at K+2.  The middle-knot weight ratio m_{K+1}/m_K enters the
/// second step's coefficients; it cancels only for weight-preserving
/// directions.
Complex three_term(const GenFnCoeffs& first, const GenFnCoeffs& second,
                   Complex q_k, Complex q_k1, Complex t);

/**
 * Quadratic-form data of a composed transformation, stored projectively:
 * the relation coefficients (a, b, c, gamma) are defined up to a common
 * factor, all four as exact rational objects.  gamma is a function of t
 * for composed steps even though elementary steps carry constants.
 */
struct ComposedForm {
  RationalFn a, b, c, gamma;
  ParamPoint source, target;
  RationalFn mass_ratio_inv;  // m_target / m_source

  /// Composed raising map q -> q_target = (b q + a q') / gamma at t.
  Complex eval_raise(Complex q, Complex dq, Complex t) const;
};

ComposedForm to_composed(const GenFnCoeffs& coeffs);
/// Quadratic-form data of the formal inverse transformation
/// (target -> source): a -> -a m~/m, b <-> c, gamma unchanged.
ComposedForm inverse_form(const GenFnCoeffs& coeffs);
/// Eliminates the intermediate coordinate of two chained transformations.
/// Throws std::invalid_argument when second.source != first.target.
ComposedForm compose(const ComposedForm& first, const ComposedForm& second);
ComposedForm compose(const GenFnCoeffs& first, const GenFnCoeffs& second);

/// Factor of the series-level raising relation L y(K) = rho y(K+1)
/// associated with the up-step of `kind` at `point`.
Complex raise_factor(StepKind kind, const ParamPoint& point);
/// Factor of the series-level lowering relation L~ y(K+1) = rho' y(K);
/// raise_factor * lower_factor equals gamma^2 of the step.
Complex lower_factor(StepKind kind, const ParamPoint& point);

/// Normalization multiplier psi(K) converting the series solution into
/// the canonical family: one ladder application maps psi(K) y(K) exactly
/// onto psi(K+1) y(K+1).  For the beta and zeta gratings psi carries a
/// constant-magnitude phase; its square N = psi^2 satisfies the
/// functional equation rho^2 N(K) = gamma^2 N(K+1).
Complex normalization_value(StepKind kind, const ParamPoint& point);
/// N = psi^2.
Complex normalization_n(StepKind kind, const ParamPoint& point);

/// C * psi(point) * M(point, t), with the series oracle supplying M.
Complex canonical_solution(const ParamPoint& point, Complex t,
                           Complex c = Complex(1.0, 0.0),
                           StepKind kind = StepKind::AlphaUp,
                           double tol = specfun::kDefaultTol);
/// t-derivative of the same object (term-wise differentiated series).
Complex canonical_solution_dt(const ParamPoint& point, Complex t,
                              Complex c = Complex(1.0, 0.0),
                              StepKind kind = StepKind::AlphaUp,
                              double tol = specfun::kDefaultTol);

}  // namespace ladderkit::recurrence
