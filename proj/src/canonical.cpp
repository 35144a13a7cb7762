#include "ladderkit/canonical.hpp"

#include <cmath>
#include <sstream>

namespace ladderkit::canonical {

namespace {

const Complex kOne(1.0, 0.0);
const Complex kZero(0.0, 0.0);

GenFnCoeffs finish(GenFnCoeffs c) {
  c.gamma = std::sqrt(c.gamma_sq);
  c.degenerate = (c.gamma_sq == kZero);
  return c;
}

void require_family(const ModelSpec& model, const GenFnCoeffs& coeffs,
                    const char* where) {
  if (model.point.family != coeffs.source.family) {
    std::ostringstream os;
    os << where << ": model family does not match coefficient family";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

GenFnCoeffs chg_alpha_step(Complex alpha, Complex beta) {
  GenFnCoeffs c;
  c.source = ParamPoint::chg(alpha, beta);
  c.step = StepKind::AlphaUp;
  const Complex edge = alpha - beta + kOne;
  c.a_unit = Monomial{kOne, 1, 0};
  c.a = c.a_unit.to_rational();
  c.b = RationalFn::constant(alpha);
  c.c = RationalFn::monomial(kOne, 1, 0) + RationalFn::constant(edge);
  c.gamma_sq = alpha * edge;
  return finish(c);
}

GenFnCoeffs chg_beta_step(Complex alpha, Complex beta) {
  GenFnCoeffs c;
  c.source = ParamPoint::chg(alpha, beta);
  c.step = StepKind::BetaUp;
  c.a_unit = Monomial{kOne, 0, 0};
  c.a = c.a_unit.to_rational();
  c.b = RationalFn::constant(-kOne);
  c.c = RationalFn::constant(-beta);
  c.gamma_sq = beta - alpha;
  return finish(c);
}

GenFnCoeffs hg_alpha_step(Complex alpha, Complex beta, Complex zeta) {
  GenFnCoeffs c;
  c.source = ParamPoint::hg(alpha, beta, zeta);
  c.step = StepKind::AlphaUp;
  const Complex edge = alpha - zeta + kOne;
  c.a_unit = Monomial{kOne, 1, 0};
  c.a = c.a_unit.to_rational();
  c.b = RationalFn::constant(alpha);
  c.c = RationalFn::constant(edge) + RationalFn::monomial(beta, 1, 0);
  c.gamma_sq = alpha * edge;
  return finish(c);
}

GenFnCoeffs hg_beta_step(Complex alpha, Complex beta, Complex zeta) {
  // alpha <-> beta symmetry of the Gauss equation
  GenFnCoeffs c = hg_alpha_step(beta, alpha, zeta);
  c.source = ParamPoint::hg(alpha, beta, zeta);
  c.step = StepKind::BetaUp;
  return c;
}

GenFnCoeffs hg_zeta_step(Complex alpha, Complex beta, Complex zeta) {
  GenFnCoeffs c;
  c.source = ParamPoint::hg(alpha, beta, zeta);
  c.step = StepKind::ZetaUp;
  c.a_unit = Monomial{kOne, 0, 1};  // 1 - t
  c.a = c.a_unit.to_rational();
  c.b = RationalFn::constant(zeta - alpha - beta);
  c.c = RationalFn::constant(-zeta);
  c.gamma_sq = (zeta - alpha) * (beta - zeta);
  return finish(c);
}

GenFnCoeffs make_step(const ParamPoint& point, StepKind kind) {
  if (!step_is_raise(kind))
    throw std::invalid_argument("make_step: down kinds are realized by lowering "
                                "across the up-step one knot below");
  if (point.family == Family::Chg) {
    switch (kind) {
      case StepKind::AlphaUp: return chg_alpha_step(point.alpha, point.beta);
      case StepKind::BetaUp: return chg_beta_step(point.alpha, point.beta);
      default:
        throw std::invalid_argument("make_step: zeta step on the confluent family");
    }
  }
  switch (kind) {
    case StepKind::AlphaUp: return hg_alpha_step(point.alpha, point.beta, point.zeta);
    case StepKind::BetaUp: return hg_beta_step(point.alpha, point.beta, point.zeta);
    case StepKind::ZetaUp: return hg_zeta_step(point.alpha, point.beta, point.zeta);
    default: break;
  }
  throw std::invalid_argument("make_step: unsupported step kind");
}

double ResidualTriple::max_abs_coeff() const {
  return std::max({r1.max_abs_coeff(), r2.max_abs_coeff(), r3.max_abs_coeff()});
}

ResidualTriple coeff_residuals(const ModelSpec& model, StepKind step,
                               const GenFnCoeffs& coeffs) {
  require_family(model, coeffs, "coeff_residuals");
  if (step_up_kind(step) != step_up_kind(coeffs.step))
    throw std::invalid_argument("coeff_residuals: step does not match coefficients");
  if (model.point != coeffs.source)
    throw std::invalid_argument("coeff_residuals: model point does not match "
                                "coefficient source");

  const RationalFn log_m = model.log_deriv_m();
  const RationalFn ratio = model.mass_ratio(coeffs.step);
  const RationalFn u = model.potential();
  const RationalFn u_t = ModelSpec::for_point(coeffs.target()).potential();

  ResidualTriple res;
  res.r1 = coeffs.a.derivative() - log_m * coeffs.a - ratio * coeffs.c + coeffs.b;
  res.r2 = ratio * coeffs.c.derivative() + coeffs.b.derivative() - (u_t - u) * coeffs.a;
  const RationalFn bc_minus_g =
      coeffs.b * coeffs.c - RationalFn::constant(coeffs.gamma_sq);
  res.r3 = coeffs.a * coeffs.b.derivative() + u * (coeffs.a * coeffs.a) -
           ratio * bc_minus_g;
  return res;
}

Complex generating_fn_eval(const GenFnCoeffs& coeffs, const ModelSpec& model,
                           Complex q, Complex q_t, Complex t) {
  require_family(model, coeffs, "generating_fn_eval");
  const Complex a = coeffs.a.value_at(t);
  if (a == kZero)
    throw std::domain_error("generating_fn_eval: a(t) = 0");
  const Complex s = (2.0 * coeffs.gamma * q * q_t - coeffs.b.value_at(t) * q * q -
                     coeffs.c.value_at(t) * q_t * q_t) /
                    (2.0 * a);
  return model.mass(t) * s;
}

Complex hamiltonian_eval(Complex p, Complex q, Complex t, const ModelSpec& model) {
  const Complex m = model.mass(t);
  const Complex u = model.potential().value_at(t);
  return p * p / (2.0 * m) - 0.5 * m * u * q * q;
}

Complex invariance_residual(const GenFnCoeffs& coeffs, const ModelSpec& model,
                            Complex q, Complex q_t, Complex t) {
  require_family(model, coeffs, "invariance_residual");
  const Complex a = coeffs.a.value_at(t);
  if (a == kZero) throw std::domain_error("invariance_residual: a(t) = 0");
  const Complex b = coeffs.b.value_at(t);
  const Complex c = coeffs.c.value_at(t);
  const Complex da = coeffs.a.derivative().value_at(t);
  const Complex db = coeffs.b.derivative().value_at(t);
  const Complex dc = coeffs.c.derivative().value_at(t);
  const Complex g = coeffs.gamma;

  const Complex s = (2.0 * g * q * q_t - b * q * q - c * q_t * q_t) / (2.0 * a);
  const Complex ds_dq = (g * q_t - b * q) / a;
  const Complex ds_dqt = (g * q - c * q_t) / a;
  // dS/dt at fixed (q, q~): the only t-dependence is through a, b, c
  const Complex s_dot = -(da / a) * s + (-db * q * q - dc * q_t * q_t) / (2.0 * a);

  const Complex log_m = model.log_deriv_m().value_at(t);
  const Complex ratio = model.mass_ratio(coeffs.step).value_at(t);
  const Complex u = model.potential().value_at(t);
  const Complex u_t = ModelSpec::for_point(coeffs.target()).potential().value_at(t);

  return 2.0 * (log_m * s + s_dot) + ds_dq * ds_dq - ratio * ds_dqt * ds_dqt -
         u * q * q + (kOne / ratio) * u_t * q_t * q_t;
}

// ---------------------------------------------------------------------------
// s-dimensional residuals
// ---------------------------------------------------------------------------

namespace {

std::size_t square_size(const RfnMatrix& m, const char* name) {
  const std::size_t s = m.size();
  for (const auto& row : m)
    if (row.size() != s) {
      std::ostringstream os;
      os << "matrix_coeff_residuals: " << name << " is not square";
      throw std::invalid_argument(os.str());
    }
  return s;
}

void require_symmetric(const RfnMatrix& m, const char* name) {
  const std::size_t s = m.size();
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      if (m[i][j] != m[j][i]) {
        std::ostringstream os;
        os << "matrix_coeff_residuals: " << name << " is not symmetric";
        throw std::invalid_argument(os.str());
      }
}

RfnMatrix zeros(std::size_t s) {
  return RfnMatrix(s, std::vector<RationalFn>(s));
}

RfnMatrix mat_mul(const RfnMatrix& x, const RfnMatrix& y) {
  const std::size_t s = x.size();
  RfnMatrix out = zeros(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) out[i][j] = out[i][j] + x[i][k] * y[k][j];
  return out;
}

RationalFn det(const RfnMatrix& m) {
  const std::size_t s = m.size();
  if (s == 1) return m[0][0];
  RationalFn acc;
  double sign = 1.0;
  for (std::size_t k = 0; k < s; ++k) {
    RfnMatrix minor(s - 1, std::vector<RationalFn>(s - 1));
    for (std::size_t i = 1; i < s; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < s; ++j) {
        if (j == k) continue;
        minor[i - 1][jj++] = m[i][j];
      }
    }
    acc = acc + (m[0][k] * det(minor)).scaled(Complex(sign, 0.0));
    sign = -sign;
  }
  return acc;
}

// Inverse via adjugate; requires the determinant to be a single-term
// function so the division stays inside the representation.
RfnMatrix inverse(const RfnMatrix& m, const char* name) {
  const std::size_t s = m.size();
  const RationalFn d = det(m);
  if (d.is_zero()) {
    std::ostringstream os;
    os << "matrix_coeff_residuals: " << name << " is singular";
    throw std::domain_error(os.str());
  }
  if (!d.is_monomial()) {
    std::ostringstream os;
    os << "matrix_coeff_residuals: " << name
       << " has a multi-term determinant; its inverse leaves the representation";
    throw std::domain_error(os.str());
  }
  const RationalFn d_inv = d.monomial_inverse();
  RfnMatrix out = zeros(s);
  if (s == 1) {
    out[0][0] = d_inv;
    return out;
  }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      RfnMatrix minor(s - 1, std::vector<RationalFn>(s - 1));
      std::size_t ii = 0;
      for (std::size_t r = 0; r < s; ++r) {
        if (r == j) continue;  // adjugate transposes the cofactor matrix
        std::size_t jj = 0;
        for (std::size_t c = 0; c < s; ++c) {
          if (c == i) continue;
          minor[ii][jj++] = m[r][c];
        }
        ++ii;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      out[i][j] = (det(minor) * d_inv).scaled(Complex(sign, 0.0));
    }
  return out;
}

}  // namespace

bool MatrixResiduals::all_zero() const {
  for (const auto* m : {&r_gamma, &r_b, &r_c})
    for (const auto& row : *m)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
  return true;
}

double MatrixResiduals::max_abs_coeff() const {
  double v = 0.0;
  for (const auto* m : {&r_gamma, &r_b, &r_c})
    for (const auto& row : *m)
      for (const auto& e : row) v = std::max(v, e.max_abs_coeff());
  return v;
}

MatrixResiduals matrix_coeff_residuals(const RfnMatrix& g, const RfnMatrix& u,
                                       const RfnMatrix& g_t, const RfnMatrix& u_t,
                                       const RfnMatrix& gamma_m, const RfnMatrix& b_m,
                                       const RfnMatrix& c_m, Complex lambda,
                                       Complex lambda_t, const WeightFactor& weight) {
  const std::size_t s = square_size(g, "g");
  for (const auto& [m, name] :
       std::initializer_list<std::pair<const RfnMatrix*, const char*>>{
           {&u, "U"}, {&g_t, "g~"}, {&u_t, "U~"}, {&gamma_m, "gamma"}, {&b_m, "b"}, {&c_m, "c"}}) {
    if (square_size(*m, name) != s)
      throw std::invalid_argument("matrix_coeff_residuals: dimension mismatch");
  }
  require_symmetric(g, "g");
  require_symmetric(g_t, "g~");
  require_symmetric(u, "U");
  require_symmetric(u_t, "U~");

  const RfnMatrix g_inv = inverse(g, "g");
  const RfnMatrix gt_inv = inverse(g_t, "g~");
  const RationalFn& ell = weight.log_deriv;
  const RationalFn rho = weight.ratio.to_rational();
  const RationalFn rho_inv = weight.ratio.inverse().to_rational();

  // products through the inverse metrics
  auto sandwich = [&](const RfnMatrix& x, const RfnMatrix& inv, const RfnMatrix& y) {
    // x^T inv y   (indices: sum_{i,j} x_{i r} inv^{i j} y_{j s})
    RfnMatrix xt = zeros(s), out;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) xt[i][j] = x[j][i];
    out = mat_mul(mat_mul(xt, inv), y);
    return out;
  };

  auto weighted_dot = [&](const RfnMatrix& m) {
    // ell * m + dm/dt, entry-wise
    RfnMatrix out = zeros(s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        out[i][j] = ell * m[i][j] + m[i][j].derivative();
    return out;
  };

  const RfnMatrix dot_gamma = weighted_dot(gamma_m);
  const RfnMatrix dot_b = weighted_dot(b_m);
  const RfnMatrix dot_c = weighted_dot(c_m);

  // With symmetric metrics the two dummy-index orderings of each paired
  // term coincide, so the cross-term equation carries plain factors of 2.
  const RfnMatrix gb = sandwich(gamma_m, g_inv, b_m);     // gamma_ir g^{ij} b_js
  const RfnMatrix gtc = sandwich(gamma_m, gt_inv, c_m);   // gamma_ir g~^{ij} c_js
  const RfnMatrix bb = sandwich(b_m, g_inv, b_m);
  const RfnMatrix gg = sandwich(gamma_m, g_inv, gamma_m);
  const RfnMatrix gg_t = sandwich(gamma_m, gt_inv, gamma_m);
  const RfnMatrix cc_t = sandwich(c_m, gt_inv, c_m);

  MatrixResiduals res;
  res.r_gamma = zeros(s);
  res.r_b = zeros(s);
  res.r_c = zeros(s);
  const RationalFn lam = RationalFn::constant(lambda);
  const RationalFn lam_t = RationalFn::constant(lambda_t);
  const Complex two(2.0, 0.0);

  for (std::size_t r = 0; r < s; ++r)
    for (std::size_t c = 0; c < s; ++c) {
      res.r_gamma[r][c] = dot_gamma[r][c].scaled(two) - gb[r][c].scaled(two) +
                          (rho * gtc[c][r]).scaled(two);
      res.r_b[r][c] = -dot_b[r][c] + bb[r][c] + lam * g[r][c] - u[r][c] -
                      rho * gg_t[r][c];
      res.r_c[r][c] = -dot_c[r][c] + gg[r][c] - rho * cc_t[r][c] +
                      rho_inv * (u_t[r][c] - lam_t * g_t[r][c]);
    }
  return res;
}

}  // namespace ladderkit::canonical
