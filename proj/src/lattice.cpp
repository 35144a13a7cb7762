#include "ladderkit/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ladderkit/specfun.hpp"

namespace ladderkit::lattice {

namespace {

const Complex kOne(1.0, 0.0);
const Complex kZero(0.0, 0.0);

void require_chain(const GenFnCoeffs& first, const GenFnCoeffs& second,
                   const char* where) {
  if (second.source != first.target() || second.step != first.step) {
    std::ostringstream os;
    os << where << ": steps do not chain along one direction";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ParamPoint resolve(const KnotIndex& knot) {
  if (static_cast<int>(knot.offsets.size()) != knot.base.param_count())
    throw std::invalid_argument("resolve: offset count does not match the family");
  ParamPoint p = knot.base;
  for (std::size_t i = 0; i < knot.offsets.size(); ++i)
    if (knot.offsets[i] != 0) p = p.shifted(static_cast<int>(i), knot.offsets[i]);
  return p;
}

Matrix2 ConnectionMatrix::entries() const {
  const RationalFn a_inv = coeffs.a_unit.inverse().to_rational();
  const RationalFn g = RationalFn::constant(coeffs.gamma);
  Matrix2 m;
  m[0][0] = -(coeffs.b * a_inv);
  m[0][1] = g * a_inv;
  m[1][0] = -(ratio * g * a_inv);
  m[1][1] = ratio * coeffs.c * a_inv;
  return m;
}

std::array<Complex, 2> ConnectionMatrix::apply(const StateVector& s) const {
  const Matrix2 m = entries();
  return {m[0][0].value_at(s.t) * s.q + m[0][1].value_at(s.t) * s.q_next,
          m[1][0].value_at(s.t) * s.q + m[1][1].value_at(s.t) * s.q_next};
}

ConnectionMatrix connection_matrix(const GenFnCoeffs& coeffs,
                                   const GenFnCoeffs& coeffs_next,
                                   const ModelSpec& model) {
  require_chain(coeffs, coeffs_next, "connection_matrix");
  if (model.point != coeffs.source)
    throw std::invalid_argument("connection_matrix: model point does not match");
  return ConnectionMatrix{coeffs, model.mass_ratio(coeffs.step)};
}

Matrix2 TransferMatrix::entries() const {
  Matrix2 m;
  m[0][0] = p[0][0].scaled(gamma1 / gamma2);
  m[0][1] = p[0][1].scaled(kOne / gamma2);
  m[1][0] = p[1][0].scaled(gamma1 / (gamma2 * gamma3));
  m[1][1] = p[1][1].scaled(kOne / (gamma2 * gamma3));
  return m;
}

std::array<Complex, 2> TransferMatrix::apply(const StateVector& s) const {
  const Matrix2 m = entries();
  return {m[0][0].value_at(s.t) * s.q + m[0][1].value_at(s.t) * s.q_next,
          m[1][0].value_at(s.t) * s.q + m[1][1].value_at(s.t) * s.q_next};
}

TransferMatrix TransferMatrix::with_entry_perturbed(int i, int j, Complex delta) const {
  TransferMatrix out = *this;
  Complex scale;
  if (i == 0)
    scale = (j == 0) ? gamma1 / gamma2 : kOne / gamma2;
  else
    scale = (j == 0) ? gamma1 / (gamma2 * gamma3) : kOne / (gamma2 * gamma3);
  out.p[i][j] = out.p[i][j] + RationalFn::constant(delta / scale);
  return out;
}

TransferMatrix transfer_matrix(const std::vector<GenFnCoeffs>& chain) {
  if (chain.size() < 3)
    throw std::invalid_argument("transfer_matrix: need at least three chained steps");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    require_chain(chain[i], chain[i + 1], "transfer_matrix");
  const GenFnCoeffs& s1 = chain[0];
  const GenFnCoeffs& s2 = chain[1];
  const GenFnCoeffs& s3 = chain[2];
  for (const auto* s : {&s1, &s2, &s3})
    if (s->degenerate)
      throw degeneracy_error("transfer_matrix: degenerate step in the chain");

  const Monomial r1 = ModelSpec::for_point(s1.source).mass_ratio_unit(s1.step).inverse();
  const Monomial r2 = ModelSpec::for_point(s2.source).mass_ratio_unit(s2.step).inverse();
  // divisors are factored units: a in {t, 1, 1-t} times weight ratios
  const RationalFn inv_r1a1 = (r1 * s1.a_unit).inverse().to_rational();
  const RationalFn inv_r2a2 = (r2 * s2.a_unit).inverse().to_rational();

  TransferMatrix b;
  b.p[0][0] = -(s2.a * inv_r1a1);
  b.p[0][1] = s2.a * s1.c * inv_r1a1 + s2.b;
  const RationalFn pivot2 = s3.a * s2.c * inv_r2a2 + s3.b;
  b.p[1][0] = pivot2 * b.p[0][0];
  b.p[1][1] = pivot2 * b.p[0][1] - (s3.a * inv_r2a2).scaled(s2.gamma_sq);
  b.gamma1 = s1.gamma;
  b.gamma2 = s2.gamma;
  b.gamma3 = s3.gamma;
  b.gamma1_sq = s1.gamma_sq;
  b.gamma2_sq = s2.gamma_sq;
  b.gamma3_sq = s3.gamma_sq;
  b.step1 = s1;
  b.step2 = s2;
  b.step3 = s3;
  return b;
}

Matrix2 zero_curvature_residual(const TransferMatrix& b, const ConnectionMatrix& a_k,
                                const ConnectionMatrix& a_k2) {
  if (a_k.coeffs.source != b.step1.source || a_k.coeffs.step != b.step1.step ||
      a_k2.coeffs.source != b.step3.source || a_k2.coeffs.step != b.step3.step)
    throw std::invalid_argument(
        "zero_curvature_residual: connection matrices do not match the transfer chain");

  // Square roots are confined to diagonal scalings; the residual identity
  // is formed on the exact parts and unscaled afterwards.
  const RationalFn inv_a1 = b.step1.a_unit.inverse().to_rational();
  const RationalFn inv_a3 = b.step3.a_unit.inverse().to_rational();
  const RationalFn& rho1 = a_k.ratio;    // m_K / m_{K+1}
  const RationalFn& rho3 = a_k2.ratio;   // m_{K+2} / m_{K+3}

  Matrix2 a_left;  // gauge-transformed A_K (right factor)
  a_left[0][0] = -(b.step1.b * inv_a1);
  a_left[0][1] = inv_a1.scaled(b.gamma1_sq);
  a_left[1][0] = -(rho1 * inv_a1);
  a_left[1][1] = rho1 * b.step1.c * inv_a1;

  Matrix2 a_right;  // gauge-transformed A_{K+2} (left factor)
  a_right[0][0] = -(b.step3.b * inv_a3);
  a_right[0][1] = inv_a3;
  a_right[1][0] = -(rho3 * inv_a3).scaled(b.gamma3_sq);
  a_right[1][1] = rho3 * b.step3.c * inv_a3;

  Matrix2 res;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      RationalFn acc = b.p[i][j].derivative();
      for (int k = 0; k < 2; ++k)
        acc = acc + b.p[i][k] * a_left[k][j] - a_right[i][k] * b.p[k][j];
      res[i][j] = acc;
    }

  // undo the diagonal gauge: R = (g1/g2) diag(1, 1/g3) R^ diag(1, 1/g1)
  const Complex s = b.gamma1 / b.gamma2;
  res[0][0] = res[0][0].scaled(s);
  res[0][1] = res[0][1].scaled(s / b.gamma1);
  res[1][0] = res[1][0].scaled(s / b.gamma3);
  res[1][1] = res[1][1].scaled(s / (b.gamma1 * b.gamma3));
  return res;
}

// ---------------------------------------------------------------------------
// walks
// ---------------------------------------------------------------------------

namespace {

Complex oracle_log_derivative(const ParamPoint& p, Complex t, double tol) {
  const Complex value = specfun::series_value(p, t, tol).value;
  const Complex deriv = specfun::series_dt(p, t, tol).value;
  if (value == kZero)
    throw std::domain_error("walk: series value vanishes; cannot refresh derivative");
  return deriv / value;
}

}  // namespace

Complex walk(Complex seed_q, Complex seed_dq, const KnotIndex& start,
             const std::vector<StepKind>& path, Complex t, const WalkOptions& options,
             std::vector<WalkRecord>* trace) {
  ParamPoint point = resolve(start);
  std::vector<int> offsets = start.offsets;

  Complex q = seed_q;
  Complex dq = seed_dq;

  // scale of the oracle reference through exact series-level factors
  const Complex m0 = specfun::series_value(point, t, options.tol).value;
  Complex scale = (m0 == kZero) ? kZero : seed_q / m0;

  auto record = [&](const ParamPoint& p, Complex value) {
    if (trace == nullptr) return;
    const Complex ref = scale * specfun::series_value(p, t, options.tol).value;
    const double dev = std::abs(value - ref) / std::max(1.0, std::abs(ref));
    trace->push_back(WalkRecord{p, value, ref, dev});
  };
  record(point, q);

  for (const StepKind kind : path) {
    if (point.family == Family::Chg && step_param_index(kind) == 2)
      throw std::invalid_argument("walk: zeta step on the confluent family");

    const int slot = step_param_index(kind);
    const int next_offset = offsets[slot] + step_offset(kind);
    if (std::abs(next_offset) > options.max_offset)
      throw std::domain_error("walk: offset bound exceeded");

    if (step_is_raise(kind)) {
      const GenFnCoeffs coeffs = canonical::make_step(point, kind);
      const recurrence::LadderStep step{coeffs, recurrence::StepDirection::Raise};
      const Complex q_next = recurrence::apply_raise(step, q, dq, t);
      const ParamPoint next = coeffs.target();
      Complex dq_next;
      if (options.crosscheck) {
        dq_next = q_next * oracle_log_derivative(next, t, options.tol);
      } else {
        // lowering relation rearranged for the new derivative
        const Complex rho = ModelSpec::for_point(point).mass_ratio(coeffs.step).value_at(t);
        dq_next = rho * (coeffs.c.value_at(t) * q_next - coeffs.gamma * q) / coeffs.a.value_at(t);
      }
      scale = scale * recurrence::raise_factor(kind, point) / coeffs.gamma;
      point = next;
      q = q_next;
      dq = dq_next;
    } else {
      const ParamPoint below = point.shifted(kind);  // one knot down
      const GenFnCoeffs coeffs = canonical::make_step(below, step_up_kind(kind));
      const recurrence::LadderStep step{coeffs, recurrence::StepDirection::Lower};
      const Complex q_prev = recurrence::apply_lower(step, q, dq, t);
      Complex dq_prev;
      if (options.crosscheck) {
        dq_prev = q_prev * oracle_log_derivative(below, t, options.tol);
      } else {
        // raising relation rearranged for the new derivative
        dq_prev = (coeffs.gamma * q - coeffs.b.value_at(t) * q_prev) / coeffs.a.value_at(t);
      }
      scale = scale * recurrence::lower_factor(kind, below) / coeffs.gamma;
      point = below;
      q = q_prev;
      dq = dq_prev;
    }
    offsets[slot] = next_offset;
    record(point, q);
  }
  return q;
}

}  // namespace ladderkit::lattice
