#pragma once

#include <vector>

#include "ladderkit/errors.hpp"
#include "ladderkit/params.hpp"
#include "ladderkit/rational_fn.hpp"

namespace ladderkit::canonical {

/**
 * Coefficient data (a, b, c, gamma) of one elementary canonical step
 *     F = m(t) * (1/2a) * (2 gamma q q~ - b q^2 - c q~^2),
 * where q lives at `source` and q~ at `target()`.
 *
 * gamma_sq stores the exact radicand; gamma is its principal square
 * root and is the only non-exact number in the structure.  A step with
 * gamma_sq == 0 is degenerate: the residual system is still satisfied,
 * but neither ladder direction defines a map.
 */
struct GenFnCoeffs {
  RationalFn a, b, c;
  Complex gamma{};
  Complex gamma_sq{};
  ParamPoint source;
  StepKind step = StepKind::AlphaUp;
  bool degenerate = false;
  /// a in factored unit form (a is t, 1 or 1-t for every elementary step);
  /// divisions by a go through this field.
  Monomial a_unit{};

  ParamPoint target() const { return source.shifted(step); }
};

/// Confluent alpha step: a = t, b = alpha, c = t + alpha - beta + 1,
/// gamma^2 = alpha (alpha - beta + 1).
GenFnCoeffs chg_alpha_step(Complex alpha, Complex beta);

/// Confluent beta step: a = 1, b = -1, c = -beta, gamma^2 = beta - alpha.
GenFnCoeffs chg_beta_step(Complex alpha, Complex beta);

/// Gauss alpha step: a = t, b = alpha, c = alpha - zeta + 1 + beta t,
/// gamma^2 = alpha (alpha - zeta + 1).
GenFnCoeffs hg_alpha_step(Complex alpha, Complex beta, Complex zeta);

/// Gauss beta step, obtained from the alpha step by the alpha <-> beta
/// symmetry of the equation.
GenFnCoeffs hg_beta_step(Complex alpha, Complex beta, Complex zeta);

/// Gauss zeta step: a = 1 - t, b = zeta - alpha - beta, c = -zeta,
/// gamma^2 = (zeta - alpha)(beta - zeta).
GenFnCoeffs hg_zeta_step(Complex alpha, Complex beta, Complex zeta);

/// Coefficients of the unit up-step of `kind` starting at `point`.
/// Down kinds are not steps in their own right; callers realize them by
/// lowering across the up-step that starts one knot below.
GenFnCoeffs make_step(const ParamPoint& point, StepKind kind);

/// The three defining residuals, as exact objects.  All three are the
/// structural zero exactly when (a, b, c, gamma^2) solves the system
///   r1 = a' - (m'/m) a - (m/m~) c + b
///   r2 = (m/m~) c' + b' - (lambda - lambda~ + U~ - U) a
///   r3 = a b' - (lambda - U) a^2 - (m/m~) (b c - gamma^2)
/// with lambda = lambda~ = 0 for both families.
struct ResidualTriple {
  RationalFn r1, r2, r3;
  bool all_zero() const { return r1.is_zero() && r2.is_zero() && r3.is_zero(); }
  double max_abs_coeff() const;
};

ResidualTriple coeff_residuals(const ModelSpec& model, StepKind step,
                               const GenFnCoeffs& coeffs);

/// F = m(t) (1/2a)(2 gamma q q~ - b q^2 - c q~^2) at a point of phase space.
Complex generating_fn_eval(const GenFnCoeffs& coeffs, const ModelSpec& model,
                           Complex q, Complex q_t, Complex t);

/// H = p^2 / (2m) - (m/2) (U - lambda) q^2 with lambda = 0.
Complex hamiltonian_eval(Complex p, Complex q, Complex t, const ModelSpec& model);

/// Pointwise residual of the invariance condition for the generating
/// function: (2/m) d(mS)/dt + (dS/dq)^2 - (m/m~)(dS/dq~)^2
///           + (lambda - U) q^2 - (m~/m)(lambda~ - U~) q~^2,
/// the unique sign arrangement under which the residual vanishes
/// identically whenever (a, b, c, gamma) solves the coefficient system.
Complex invariance_residual(const GenFnCoeffs& coeffs, const ModelSpec& model,
                            Complex q, Complex q_t, Complex t);

// ---------------------------------------------------------------------------
// s-dimensional residual verification
// ---------------------------------------------------------------------------

using RfnMatrix = std::vector<std::vector<RationalFn>>;

/// Optional scalar weight factored out of the metric, g = m * g_hat, with
/// rational log-derivative m'/m and factored step ratio m/m~.  Defaults
/// describe a purely rational metric (log_deriv = 0, ratio = 1).
struct WeightFactor {
  RationalFn log_deriv = RationalFn::zero();
  Monomial ratio{};
  static WeightFactor none() { return WeightFactor{}; }
};

struct MatrixResiduals {
  RfnMatrix r_gamma;  // cross-term equation
  RfnMatrix r_b;      // q q equation
  RfnMatrix r_c;      // q~ q~ equation
  bool all_zero() const;
  double max_abs_coeff() const;
};

/// Left-minus-right residuals of the full s-dimensional coefficient
/// system for a quadratic generating function, given the (scaled) metric
/// and potential matrices of source and target systems.  Verification
/// only; nothing is solved.  Metrics must be invertible within the
/// representation (single-term determinant), otherwise a
/// std::domain_error is raised.
MatrixResiduals matrix_coeff_residuals(const RfnMatrix& g, const RfnMatrix& u,
                                       const RfnMatrix& g_t, const RfnMatrix& u_t,
                                       const RfnMatrix& gamma_m, const RfnMatrix& b_m,
                                       const RfnMatrix& c_m, Complex lambda,
                                       Complex lambda_t,
                                       const WeightFactor& weight = WeightFactor::none());

}  // namespace ladderkit::canonical
