#pragma once

#include <cmath>
#include <string>

#include "besselw/numeric.hpp"
#include "besselw/rational_function.hpp"

namespace besselw {

/// y^{y_power} * exp(exp_coeff / y) * rat(y) on y > 0.
struct QuasiRational {
  Rational y_power = 0;
  Rational exp_coeff = 0;
  RationalFunction rat = Polynomial::constant(1);

  friend QuasiRational operator*(const QuasiRational& l, const QuasiRational& r) {
    return {l.y_power + r.y_power, l.exp_coeff + r.exp_coeff, l.rat * r.rat};
  }
  friend QuasiRational operator/(const QuasiRational& l, const QuasiRational& r) {
    return {l.y_power - r.y_power, l.exp_coeff - r.exp_coeff, l.rat / r.rat};
  }
  friend bool operator==(const QuasiRational& l, const QuasiRational& r) {
    return l.y_power == r.y_power && l.exp_coeff == r.exp_coeff && l.rat == r.rat;
  }

  /// Net power of y as y -> infinity.
  Rational power_at_infinity() const {
    return y_power + rat.num().degree() - rat.den().degree();
  }
};

inline std::string to_string(const QuasiRational& q) {
  return "y^(" + q.y_power.get_str() + ") * exp(" + q.exp_coeff.get_str() + "/y) * " +
         to_string(q.rat);
}

/// Floating evaluation of a QuasiRational that never overflows: the prefactor
/// and the rational part are combined as logarithms.
class QuasiRationalEvaluator {
 public:
  explicit QuasiRationalEvaluator(const QuasiRational& q)
      : power_(q.y_power.get_d()),
        exp_coeff_(q.exp_coeff.get_d()),
        num_(q.rat.num()),
        den_(q.rat.den()) {}

  LogMagnitude log_at(double y) const {
    const mpf_class yy(y, kWorkingBits);
    const LogMagnitude n = log_magnitude(num_(yy));
    if (n.sign == 0) return {};
    const LogMagnitude d = log_magnitude(den_(yy));
    if (d.sign == 0) return {n.sign, std::numeric_limits<double>::infinity()};
    return {n.sign * d.sign, n.log_abs - d.log_abs + power_ * std::log(y) + exp_coeff_ / y};
  }

  double operator()(double y) const { return log_at(y).value(); }

 private:
  double power_;
  double exp_coeff_;
  FloatPolynomial num_;
  FloatPolynomial den_;
};

}  // namespace besselw
