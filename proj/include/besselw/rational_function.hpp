#pragma once

#include <stdexcept>
#include <utility>

#include "besselw/polynomial.hpp"

namespace besselw {

/// num/den in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(const Polynomial& p)  // NOLINT(google-explicit-constructor)
      : num_(p), den_(Polynomial::constant(1)) {}

  /// Removes the common factor and makes the denominator monic.
  static RationalFunction normalize(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    RationalFunction r;
    if (num.is_zero()) return r;
    const Polynomial g = gcd(num, den);
    num = exact_divide(num, g);
    den = exact_divide(den, g);
    const Rational lead = den.leading();
    r.num_ = num / lead;
    r.den_ = den / lead;
    return r;
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator()(const Rational& y) const {
    const Rational d = den_(y);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_(y) / d;
  }

  RationalFunction derivative() const {
    return normalize(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return normalize(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return normalize(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero rational function");
    return normalize(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

inline RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den) {
  return RationalFunction::normalize(num, den);
}

inline std::string to_string(const RationalFunction& r) {
  if (r.den() == Polynomial::constant(1)) return to_string(r.num());
  return "(" + to_string(r.num()) + ") / (" + to_string(r.den()) + ")";
}

}  // namespace besselw
