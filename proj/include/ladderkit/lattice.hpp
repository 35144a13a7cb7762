#pragma once

#include <array>
#include <vector>

#include "ladderkit/canonical.hpp"
#include "ladderkit/params.hpp"
#include "ladderkit/recurrence.hpp"

namespace ladderkit::lattice {

using canonical::GenFnCoeffs;

/// A knot addressed relative to a base point: one integer offset per
/// parameter of the family.
struct KnotIndex {
  ParamPoint base;
  std::vector<int> offsets;  // size 2 (chg) or 3 (hg)
};

/// Base point with every parameter shifted by its offset.
ParamPoint resolve(const KnotIndex& knot);

/// Two-component state (q_K, q_{K+1}) along a fixed grating direction.
struct StateVector {
  Complex q{};
  Complex q_next{};
  Complex t{};
};

using Matrix2 = std::array<std::array<RationalFn, 2>, 2>;

/**
 * Connection matrix A_K of dQ_K/dt = A_K Q_K, assembled from the step
 * K -> K+1:
 *
 *   A_K = [ -b/a            gamma/a        ]
 *         [ -(m/m~) gamma/a (m/m~) c/a     ]
 *
 * The generating data is kept alongside the materialized entries so the
 * zero-curvature residual can be formed in exact arithmetic with the
 * square roots factored out.
 */
struct ConnectionMatrix {
  GenFnCoeffs coeffs;
  RationalFn ratio;  // m_K / m_{K+1}

  Matrix2 entries() const;
  /// Pointwise A_K Q_K.
  std::array<Complex, 2> apply(const StateVector& state) const;
};

ConnectionMatrix connection_matrix(const GenFnCoeffs& coeffs,
                                   const GenFnCoeffs& coeffs_next,
                                   const ModelSpec& model);

/**
 * Transfer matrix B_K of Q_{K+2} = B_K Q_K, eliminated symbolically from
 * two overlapping three-knot relations.  Internally B is held in the
 * factored form
 *
 *   B = (gamma_1 / gamma_2) diag(1, 1/gamma_3) P diag(1, 1/gamma_1)^-1...
 *
 * concretely entries() returns
 *   [ (g1/g2) P11        (1/g2) P12      ]
 *   [ (g1/(g2 g3)) P21   (1/(g2 g3)) P22 ]
 *
 * where P is exact (no square roots), so residual identities can be
 * tested structurally.
 */
struct TransferMatrix {
  Matrix2 p;  // exact part
  Complex gamma1{}, gamma2{}, gamma3{};
  Complex gamma1_sq{}, gamma2_sq{}, gamma3_sq{};
  GenFnCoeffs step1, step2, step3;

  Matrix2 entries() const;
  std::array<Complex, 2> apply(const StateVector& state) const;
  /// Test hook: shifts the materialized (i, j) entry by delta by adjusting
  /// the exact part, so residuals of corrupted data stay computable.
  TransferMatrix with_entry_perturbed(int i, int j, Complex delta) const;
};

/// Builds B_K from a chain of at least three consecutive steps along one
/// grating direction (extra steps are validated for chaining and unused).
TransferMatrix transfer_matrix(const std::vector<GenFnCoeffs>& chain);

/// Entry-wise dB/dt + B A_K - A_{K+2} B in exact arithmetic.  All four
/// entries canonicalize to the structural zero for matrices built from
/// the step constructors.
Matrix2 zero_curvature_residual(const TransferMatrix& b, const ConnectionMatrix& a_k,
                                const ConnectionMatrix& a_k2);

struct WalkOptions {
  bool crosscheck = true;  // refresh derivatives from the series oracle
  int max_offset = 32;
  double tol = 1e-14;
};

struct WalkRecord {
  ParamPoint point;
  Complex value{};
  Complex reference{};  // series-oracle value propagated through exact factors
  double rel_deviation = 0.0;
};

/// Applies the path of elementary moves starting from (seed_q, seed_dq)
/// at `start`, evaluating every ladder at the fixed time t.  Returns the
/// terminal value; `trace`, when non-null, receives one record per knot.
Complex walk(Complex seed_q, Complex seed_dq, const KnotIndex& start,
             const std::vector<StepKind>& path, Complex t,
             const WalkOptions& options = {}, std::vector<WalkRecord>* trace = nullptr);

}  // namespace ladderkit::lattice
