#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "besselw/rational.hpp"

namespace besselw {

/// Dense univariate polynomial over Q; coefficient k multiplies y^k.
/// The coefficient vector never ends in a zero, so the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Rational& v) { return Polynomial({v}); }
  static Polynomial monomial(const Rational& v, std::size_t k) {
    std::vector<Rational> c(k + 1);
    c[k] = v;
    return Polynomial(std::move(c));
  }
  /// The polynomial y.
  static Polynomial y() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  /// Index of the lowest nonzero coefficient; -1 for zero.
  int order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) return static_cast<int>(k);
    return -1;
  }

  Rational operator()(const Rational& y) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return Polynomial(std::move(d));
  }

  Polynomial derivative(unsigned times) const {
    Polynomial p = *this;
    for (unsigned i = 0; i < times; ++i) p = p.derivative();
    return p;
  }

  /// p(s*y).
  Polynomial scale_argument(const Rational& s) const {
    std::vector<Rational> d(c_);
    Rational f = 1;
    for (auto& v : d) {
      v *= f;
      f *= s;
    }
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) throw std::domain_error("monic form of the zero polynomial");
    return *this / leading();
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  Polynomial& operator/=(const Rational& s) {
    if (s == 0) throw std::domain_error("polynomial divided by zero scalar");
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const Rational& s) { return a /= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

enum class arith { add, sub, mul };

inline Polynomial poly_arith(const Polynomial& p, const Polynomial& q, arith kind) {
  switch (kind) {
    case arith::add:
      return p + q;
    case arith::sub:
      return p - q;
    case arith::mul:
      return p * q;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

inline Polynomial poly_derivative(const Polynomial& p) { return p.derivative(); }

/// Euclidean division over Q: returns (quotient, remainder).
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead = b.leading();
  const auto& bc = b.coefficients();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

/// Division that must leave no remainder.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

/// Scales by a positive rational so that all coefficients are coprime integers.
/// The sign of every coefficient is preserved.
inline Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer l = 1;
  Integer g = 0;
  for (const auto& v : p.coefficients()) {
    if (v == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& v : p.coefficients()) {
    Rational s = v * l;
    c.push_back(s);
    if (s != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  for (auto& v : c) v /= g;
  return Polynomial(std::move(c));
}

/// Pretty form such as "1 - 3*y + 3/2*y^2".
inline std::string to_string(const Polynomial& p, const char* var = "y") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    Rational v = p.coefficients()[k];
    if (v == 0) continue;
    if (!first) {
      os << (v < 0 ? " - " : " + ");
      v = abs(v);
    } else if (v < 0 && k > 0) {
      os << "-";
      v = abs(v);
    }
    if (k == 0) {
      os << v.get_str();
    } else {
      if (v != 1) os << v.get_str() << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

}  // namespace besselw
