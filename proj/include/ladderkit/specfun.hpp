#pragma once

#include "ladderkit/errors.hpp"
#include "ladderkit/params.hpp"
#include "ladderkit/rational_fn.hpp"

namespace ladderkit::specfun {

/// Value of a truncated power series together with the magnitude of the
/// first omitted term and the number of terms actually summed.
struct SeriesResult {
  Complex value{};
  double abs_error_bound = 0.0;
  int terms_used = 1;
};

inline constexpr double kDefaultTol = 1e-14;
inline constexpr int kDefaultTermCap = 10000;

/// Complex gamma function (Lanczos approximation, reflection for
/// Re z < 0.5).  Throws std::domain_error at the poles z = 0, -1, -2, ...
Complex gamma(Complex z);

/// 1/Gamma(z), entire: returns exact 0 at the poles of Gamma.
Complex gamma_reciprocal(Complex z);

/// Kummer series  M(alpha, beta, t) = sum_n (alpha)_n / (beta)_n t^n / n!.
/// Truncates when the next term falls below max(tol * |sum|, 1e-300).
SeriesResult kummer(Complex alpha, Complex beta, Complex t,
                    double tol = kDefaultTol, int term_cap = kDefaultTermCap);
SeriesResult kummer_dt(Complex alpha, Complex beta, Complex t,
                       double tol = kDefaultTol, int term_cap = kDefaultTermCap);
SeriesResult kummer_dt2(Complex alpha, Complex beta, Complex t,
                        double tol = kDefaultTol, int term_cap = kDefaultTermCap);

/// Gauss series  M(alpha, beta, zeta, t) = sum_n (alpha)_n (beta)_n / (zeta)_n t^n / n!
/// for |t| < 1.
SeriesResult gauss(Complex alpha, Complex beta, Complex zeta, Complex t,
                   double tol = kDefaultTol, int term_cap = kDefaultTermCap);
SeriesResult gauss_dt(Complex alpha, Complex beta, Complex zeta, Complex t,
                      double tol = kDefaultTol, int term_cap = kDefaultTermCap);
SeriesResult gauss_dt2(Complex alpha, Complex beta, Complex zeta, Complex t,
                       double tol = kDefaultTol, int term_cap = kDefaultTermCap);

/// Residual of the confluent equation:  t q'' + (beta - t) q' - alpha q.
Complex ode_residual_chg(Complex q, Complex dq, Complex ddq,
                         Complex alpha, Complex beta, Complex t);

/// Residual of the Gauss equation:
///   t (1-t) q'' - ((alpha + beta + 1) t - zeta) q' - alpha beta q.
Complex ode_residual_hg(Complex q, Complex dq, Complex ddq,
                        Complex alpha, Complex beta, Complex zeta, Complex t);

/// Series value of the family member at `point` (Kummer or Gauss).
SeriesResult series_value(const ParamPoint& point, Complex t,
                          double tol = kDefaultTol, int term_cap = kDefaultTermCap);
SeriesResult series_dt(const ParamPoint& point, Complex t,
                       double tol = kDefaultTol, int term_cap = kDefaultTermCap);
SeriesResult series_dt2(const ParamPoint& point, Complex t,
                        double tol = kDefaultTol, int term_cap = kDefaultTermCap);

}  // namespace ladderkit::specfun
