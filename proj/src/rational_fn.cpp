#include "ladderkit/rational_fn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace ladderkit {

Complex ipow(Complex z, int n) {
  if (n < 0) return Complex(1.0, 0.0) / ipow(z, -n);
  Complex acc(1.0, 0.0);
  Complex base = z;
  unsigned e = static_cast<unsigned>(n);
  while (e != 0) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1u;
  }
  return acc;
}

Monomial Monomial::inverse() const {
  if (coeff == Complex(0.0, 0.0))
    throw std::domain_error("Monomial::inverse: zero coefficient");
  return Monomial{Complex(1.0, 0.0) / coeff, -i, -j};
}

Monomial Monomial::operator*(const Monomial& o) const {
  return Monomial{coeff * o.coeff, i + o.i, j + o.j};
}

Complex Monomial::eval(Complex t) const {
  return coeff * ipow(t, i) * ipow(Complex(1.0, 0.0) - t, j);
}

RationalFn Monomial::to_rational() const { return RationalFn::monomial(coeff, i, j); }

RationalFn RationalFn::constant(Complex k) { return monomial(k, 0, 0); }

RationalFn RationalFn::monomial(Complex k, int i, int j) {
  RationalFn f;
  f.add_term(i, j, k);
  return f;
}

// Rewrite an arbitrary (i, j) term into the canonical basis:
//   j > 0:          (1-t)^j = (1-t)^{j-1} - t (1-t)^{j-1}
//   i > 0, j < 0:   t^i (1-t)^j = t^{i-1} (1-t)^j - t^{i-1} (1-t)^{j+1}
//   i < 0, j < 0:   t^i (1-t)^j = t^i (1-t)^{j+1} + t^{i+1} (1-t)^j
// Each rule lowers |j| or moves i toward 0, so the worklist terminates.
void RationalFn::add_term(int i, int j, Complex k) {
  std::vector<std::tuple<int, int, Complex>> work;
  work.emplace_back(i, j, k);
  while (!work.empty()) {
    auto [ti, tj, tk] = work.back();
    work.pop_back();
    if (tk == Complex(0.0, 0.0)) continue;
    if (tj > 0) {
      work.emplace_back(ti, tj - 1, tk);
      work.emplace_back(ti + 1, tj - 1, -tk);
    } else if (tj < 0 && ti > 0) {
      work.emplace_back(ti - 1, tj, tk);
      work.emplace_back(ti - 1, tj + 1, -tk);
    } else if (tj < 0 && ti < 0) {
      work.emplace_back(ti, tj + 1, tk);
      work.emplace_back(ti + 1, tj, tk);
    } else {
      auto it = terms_.find({ti, tj});
      if (it == terms_.end()) {
        terms_.emplace(Key{ti, tj}, tk);
      } else {
        it->second += tk;
        if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
      }
    }
  }
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  RationalFn out = *this;
  for (const auto& [key, k] : o.terms_) out.add_term(key.first, key.second, k);
  return out;
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  RationalFn out = *this;
  for (const auto& [key, k] : o.terms_) out.add_term(key.first, key.second, -k);
  return out;
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  RationalFn out;
  for (const auto& [ka, va] : terms_)
    for (const auto& [kb, vb] : o.terms_)
      out.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
  return out;
}

RationalFn RationalFn::operator-() const { return scaled(Complex(-1.0, 0.0)); }

RationalFn RationalFn::scaled(Complex k) const {
  RationalFn out;
  if (k == Complex(0.0, 0.0)) return out;
  for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * k);
  // multiplying a nonzero coefficient by nonzero k can underflow to zero
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (it->second == Complex(0.0, 0.0))
      it = out.terms_.erase(it);
    else
      ++it;
  }
  return out;
}

RationalFn RationalFn::derivative() const {
  RationalFn out;
  for (const auto& [key, k] : terms_) {
    const auto [i, j] = key;
    if (i != 0) out.add_term(i - 1, j, k * static_cast<double>(i));
    if (j != 0) out.add_term(i, j - 1, -k * static_cast<double>(j));
  }
  return out;
}

Complex RationalFn::eval(Complex t) const {
  if (t == Complex(0.0, 0.0) || t == Complex(1.0, 0.0))
    throw std::domain_error("RationalFn::eval: t in {0, 1} is outside the domain");
  const Complex u = Complex(1.0, 0.0) - t;
  Complex sum(0.0, 0.0);
  for (const auto& [key, k] : terms_) sum += k * ipow(t, key.first) * ipow(u, key.second);
  return sum;
}

Complex RationalFn::value_at(Complex t) const {
  const bool at_zero = (t == Complex(0.0, 0.0));
  const bool at_one = (t == Complex(1.0, 0.0));
  if (!at_zero && !at_one) return eval(t);
  Complex sum(0.0, 0.0);
  for (const auto& [key, k] : terms_) {
    const auto [i, j] = key;
    if ((at_zero && i < 0) || (at_one && j < 0))
      throw std::domain_error("RationalFn::value_at: pole at the evaluation point");
    // at t = 0 only i == 0 terms contribute, at t = 1 only j == 0 terms
    if (at_zero ? (i == 0) : (j == 0))
      sum += k * (at_zero ? ipow(Complex(1.0, 0.0) - t, j) : ipow(t, i));
  }
  return sum;
}

double RationalFn::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [key, k] : terms_) m = std::max(m, std::abs(k));
  return m;
}

RationalFn RationalFn::times(const Monomial& m) const {
  RationalFn out;
  for (const auto& [key, k] : terms_)
    out.add_term(key.first + m.i, key.second + m.j, k * m.coeff);
  return out;
}

RationalFn RationalFn::monomial_inverse() const {
  if (terms_.size() != 1)
    throw std::domain_error("RationalFn::monomial_inverse: not a single-term function");
  const auto& [key, k] = *terms_.begin();
  return monomial(Complex(1.0, 0.0) / k, -key.first, -key.second);
}

std::string RationalFn::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, k] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << k.real();
    if (k.imag() != 0.0) os << (k.imag() < 0 ? "" : "+") << k.imag() << "i";
    os << ")";
    if (key.first != 0) os << "*t^" << key.first;
    if (key.second != 0) os << "*(1-t)^" << key.second;
  }
  return os.str();
}

}  // namespace ladderkit
