#include "ladderkit/specfun.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace ladderkit::specfun {

namespace {

bool is_nonpositive_integer(Complex z) {
  if (z.imag() != 0.0) return false;
  const double r = z.real();
  return r <= 0.0 && r == std::floor(r);
}

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

Complex gamma_right_half(Complex z) {
  // expects Re z >= 0.5
  const Complex zm1 = z - Complex(1.0, 0.0);
  Complex acc(kLanczos[0], 0.0);
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (zm1 + Complex(static_cast<double>(i), 0.0));
  const Complex t = zm1 + Complex(kLanczosG + 0.5, 0.0);
  const double sqrt_two_pi = 2.5066282746310005024;
  return sqrt_two_pi * std::pow(t, zm1 + Complex(0.5, 0.0)) * std::exp(-t) * acc;
}

SeriesResult run_series(Complex first_term, Complex t,
                        const std::function<Complex(int)>& ratio, double tol,
                        int term_cap, const char* what) {
  if (tol <= 0.0) throw std::invalid_argument("series tolerance must be positive");
  if (t == Complex(0.0, 0.0)) return SeriesResult{first_term, 0.0, 1};
  Complex term = first_term;
  Complex sum = first_term;
  for (int n = 0; n < term_cap; ++n) {
    const Complex next = term * ratio(n);
    const double mag = std::abs(next);
    if (mag < std::max(tol * std::abs(sum), 1e-300))
      return SeriesResult{sum, mag, n + 1};
    sum += next;
    term = next;
  }
  std::ostringstream os;
  os << what << ": series did not converge within " << term_cap << " terms";
  throw convergence_error(os.str());
}

Complex pochhammer(Complex z, int n) {
  Complex acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) acc *= z + Complex(static_cast<double>(i), 0.0);
  return acc;
}

// d-th term-wise derivative of the Kummer series:
//   sum_k (alpha)_{k+d} / (beta)_{k+d} t^k / k!,  T_0 = (alpha)_d / (beta)_d.
SeriesResult kummer_deriv(Complex alpha, Complex beta, Complex t, double tol,
                          int term_cap, int d) {
  if (is_nonpositive_integer(beta))
    throw std::domain_error("kummer: beta is a nonpositive integer");
  const Complex t0 = pochhammer(alpha, d) / pochhammer(beta, d);
  auto ratio = [=](int k) {
    const Complex kk(static_cast<double>(k + d), 0.0);
    return (alpha + kk) / (beta + kk) * t / Complex(static_cast<double>(k + 1), 0.0);
  };
  return run_series(t0, t, ratio, tol, term_cap, "kummer");
}

SeriesResult gauss_deriv(Complex alpha, Complex beta, Complex zeta, Complex t,
                         double tol, int term_cap, int d) {
  if (std::abs(t) >= 1.0)
    throw std::domain_error("gauss: series requires |t| < 1");
  if (is_nonpositive_integer(zeta))
    throw std::domain_error("gauss: zeta is a nonpositive integer");
  const Complex t0 = pochhammer(alpha, d) * pochhammer(beta, d) / pochhammer(zeta, d);
  auto ratio = [=](int k) {
    const Complex kk(static_cast<double>(k + d), 0.0);
    return (alpha + kk) * (beta + kk) / (zeta + kk) * t /
           Complex(static_cast<double>(k + 1), 0.0);
  };
  return run_series(t0, t, ratio, tol, term_cap, "gauss");
}

}  // namespace

Complex gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("gamma: pole at nonpositive integer argument");
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return Complex(pi, 0.0) / (std::sin(Complex(pi, 0.0) * z) * gamma_right_half(Complex(1.0, 0.0) - z));
  }
  return gamma_right_half(z);
}

Complex gamma_reciprocal(Complex z) {
  if (is_nonpositive_integer(z)) return Complex(0.0, 0.0);
  return Complex(1.0, 0.0) / gamma(z);
}

SeriesResult kummer(Complex alpha, Complex beta, Complex t, double tol, int term_cap) {
  return kummer_deriv(alpha, beta, t, tol, term_cap, 0);
}

SeriesResult kummer_dt(Complex alpha, Complex beta, Complex t, double tol, int term_cap) {
  return kummer_deriv(alpha, beta, t, tol, term_cap, 1);
}

SeriesResult kummer_dt2(Complex alpha, Complex beta, Complex t, double tol, int term_cap) {
  return kummer_deriv(alpha, beta, t, tol, term_cap, 2);
}

SeriesResult gauss(Complex alpha, Complex beta, Complex zeta, Complex t, double tol,
                   int term_cap) {
  return gauss_deriv(alpha, beta, zeta, t, tol, term_cap, 0);
}

SeriesResult gauss_dt(Complex alpha, Complex beta, Complex zeta, Complex t, double tol,
                      int term_cap) {
  return gauss_deriv(alpha, beta, zeta, t, tol, term_cap, 1);
}

SeriesResult gauss_dt2(Complex alpha, Complex beta, Complex zeta, Complex t, double tol,
                       int term_cap) {
  return gauss_deriv(alpha, beta, zeta, t, tol, term_cap, 2);
}

Complex ode_residual_chg(Complex q, Complex dq, Complex ddq, Complex alpha,
                         Complex beta, Complex t) {
  return t * ddq + (beta - t) * dq - alpha * q;
}

Complex ode_residual_hg(Complex q, Complex dq, Complex ddq, Complex alpha,
                        Complex beta, Complex zeta, Complex t) {
  const Complex one(1.0, 0.0);
  return t * (one - t) * ddq - ((alpha + beta + one) * t - zeta) * dq - alpha * beta * q;
}

SeriesResult series_value(const ParamPoint& p, Complex t, double tol, int term_cap) {
  if (p.family == Family::Chg) return kummer(p.alpha, p.beta, t, tol, term_cap);
  return gauss(p.alpha, p.beta, p.zeta, t, tol, term_cap);
}

SeriesResult series_dt(const ParamPoint& p, Complex t, double tol, int term_cap) {
  if (p.family == Family::Chg) return kummer_dt(p.alpha, p.beta, t, tol, term_cap);
  return gauss_dt(p.alpha, p.beta, p.zeta, t, tol, term_cap);
}

SeriesResult series_dt2(const ParamPoint& p, Complex t, double tol, int term_cap) {
  if (p.family == Family::Chg) return kummer_dt2(p.alpha, p.beta, t, tol, term_cap);
  return gauss_dt2(p.alpha, p.beta, p.zeta, t, tol, term_cap);
}

}  // namespace ladderkit::specfun
