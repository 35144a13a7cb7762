#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace ladderkit {

using Complex = std::complex<double>;

/// Integer power; n < 0 takes the reciprocal of the positive power.
Complex ipow(Complex z, int n);

class RationalFn;

/// A unit of the function algebra: k * t^i * (1-t)^j.  These are the
/// invertible elements; their canonical partial-fraction form usually
/// has several terms, so divisors are carried in this factored shape.
struct Monomial {
  Complex coeff{1.0, 0.0};
  int i = 0;
  int j = 0;

  Monomial inverse() const;
  Monomial operator*(const Monomial& o) const;
  Complex eval(Complex t) const;
  RationalFn to_rational() const;
};

/**
 * Sparse exact sum of terms  k * t^i * (1-t)^j  with complex k and
 * integer exponents i, j.
 *
 * The raw monomial set {t^i (1-t)^j} is linearly dependent (for example
 * 1/(t(1-t)) = 1/t + 1/(1-t)), so every inserted term is rewritten into
 * the canonical partial-fraction basis
 *
 *     { t^i : i >= 0 }  u  { t^-i : i >= 1 }  u  { (1-t)^-j : j >= 1 },
 *
 * i.e. stored keys always have j == 0 or (i == 0 and j < 0).  In that
 * basis the representation of a function is unique, so structural
 * equality of canonical forms is equality of functions.  Coefficients
 * that cancel to exact 0.0 are dropped; no epsilon pruning is applied.
 *
 * All operations are closed over the basis except division, which is
 * supported for single-term (monomial) divisors only.
 */
class RationalFn {
public:
  /// (i, j) exponent pair of t^i (1-t)^j.
  using Key = std::pair<int, int>;
  using TermMap = std::map<Key, Complex>;

  RationalFn() = default;

  static RationalFn zero() { return {}; }
  static RationalFn constant(Complex k);
  /// Single term k * t^i * (1-t)^j (canonicalized on construction).
  static RationalFn monomial(Complex k, int i, int j);

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator-() const;
  RationalFn scaled(Complex k) const;

  /// d/dt, using d/dt[t^i (1-t)^j] = i t^{i-1} (1-t)^j - j t^i (1-t)^{j-1}.
  RationalFn derivative() const;

  /// Pointwise value; throws std::domain_error at t = 0 and t = 1.
  Complex eval(Complex t) const;
  /// Pointwise value wherever the function is finite: t = 0 and t = 1 are
  /// accepted unless a stored term actually has a pole there.
  Complex value_at(Complex t) const;

  /// Structural zero test (empty canonical form).
  bool is_zero() const { return terms_.empty(); }
  /// Largest coefficient magnitude, 0 for the zero object.
  double max_abs_coeff() const;

  bool is_monomial() const { return terms_.size() == 1; }
  /// Reciprocal of a single-term function; throws otherwise.
  RationalFn monomial_inverse() const;
  /// Exact product with a factored unit.
  RationalFn times(const Monomial& m) const;

  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Structural equality of canonical forms (exact coefficients).
  bool operator==(const RationalFn& o) const { return terms_ == o.terms_; }
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  std::string to_string() const;

private:
  void add_term(int i, int j, Complex k);

  TermMap terms_;
};

}  // namespace ladderkit
