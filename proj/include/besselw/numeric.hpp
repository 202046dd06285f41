#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <vector>

#include "besselw/polynomial.hpp"

namespace besselw {

/// Mantissa width for floating evaluation of exact polynomials. High-degree
/// Wronskians have alternating coefficients; double Horner loses every digit.
inline constexpr mp_bitcnt_t kWorkingBits = 256;

/// sign * exp(log_abs); sign == 0 encodes an exact zero.
struct LogMagnitude {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

inline LogMagnitude log_magnitude(const mpf_class& v) {
  const int s = sgn(v);
  if (s == 0) return {};
  long exp2 = 0;
  const double mant = mpf_get_d_2exp(&exp2, v.get_mpf_t());
  return {s, std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0)};
}

/// Polynomial with coefficients cached as extended-precision floats.
class FloatPolynomial {
 public:
  FloatPolynomial() = default;
  explicit FloatPolynomial(const Polynomial& p) {
    c_.reserve(p.coefficients().size());
    for (const auto& v : p.coefficients()) c_.emplace_back(v, kWorkingBits);
  }

  mpf_class operator()(const mpf_class& y) const {
    mpf_class acc(0, kWorkingBits);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= y;
      acc += *it;
    }
    return acc;
  }

  mpf_class operator()(double y) const { return (*this)(mpf_class(y, kWorkingBits)); }

 private:
  std::vector<mpf_class> c_;
};

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace besselw
