#pragma once

#include <stdexcept>
#include <string>

#include "besselw/error.hpp"
#include "besselw/polynomial.hpp"

namespace besselw {

enum class Sign { plus, minus };

inline int to_int(Sign s) { return s == Sign::plus ? 1 : -1; }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// Index pair (alpha, beta) of Y_n^{(alpha, beta)}; beta is never zero.
struct BesselIndex {
  Rational alpha;
  Rational beta;

  BesselIndex(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
    if (beta == 0) throw std::invalid_argument("Bessel scale beta must be nonzero");
  }
};

/// Coefficients of y^2 F'' + (tau_linear*y + tau_const) F' + shift(m) F = 0,
/// the gauge-transformed equation whose polynomial solutions are the seeds.
struct OdeCoefficients {
  Sign sign;
  Rational a;
  Rational tau_linear;
  Rational tau_const;

  OdeCoefficients(Sign s, const Rational& param)
      : sign(s),
        a(param),
        tau_linear(2 * (1 + to_int(s) * param)),
        tau_const(-2 * to_int(s)) {}

  /// Eigenvalue term for the degree-m polynomial solution.
  Rational eigenshift(unsigned m) const { return -Rational(m) * (tau_linear + m - 1); }
};

/// Y_n^{(alpha)}(y) = sum_k C(n,k) (n+alpha+1)...(n+alpha+k) (y/2)^k.
inline Polynomial gen_bessel(unsigned n, const Rational& alpha) {
  std::vector<Rational> c(n + 1);
  Rational rising = 1;
  Rational half_pow = 1;
  const Rational base = alpha + n;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) {
      rising *= base + k;
      half_pow /= 2;
    }
    c[k] = Rational(binomial(n, k)) * rising * half_pow;
  }
  return Polynomial(std::move(c));
}

/// Y_n^{(alpha, beta)}(y) = Y_n^{(alpha)}(2y/beta): beta = 2 is the plain
/// polynomial and beta = -2 reflects the argument.
inline Polynomial gen_bessel_scaled(unsigned n, const BesselIndex& idx) {
  return gen_bessel(n, idx.alpha).scale_argument(Rational(2) / idx.beta);
}

/// Romanovski-Bessel B_n^{(A)} = Y_n^{(-2A-1)}; orthogonal only for n < A.
inline Polynomial rbessel(unsigned n, const Rational& A) {
  if (Rational(n) >= A)
    warn("rbessel degree " + std::to_string(n) + " is outside the orthogonal range n < " +
         A.get_str());
  return gen_bessel(n, -2 * A - 1);
}

/// Generalized Laguerre L_n^{(alpha)}(x) = sum_k (-1)^k (alpha+k+1)_{n-k} / ((n-k)! k!) x^k.
inline Polynomial laguerre(unsigned n, const Rational& alpha) {
  std::vector<Rational> c(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Rational v = rising_from(alpha + k, n - k);
    v /= Rational(factorial(n - k) * factorial(k));
    if (k % 2 == 1) v = -v;
    c[k] = v;
  }
  return Polynomial(std::move(c));
}

enum class Identity { laguerre_connection, backward_shift, forward_shift, bochner_ode };

inline std::string to_string(Identity id) {
  switch (id) {
    case Identity::laguerre_connection:
      return "laguerre_connection";
    case Identity::backward_shift:
      return "backward_shift";
    case Identity::forward_shift:
      return "forward_shift";
    case Identity::bochner_ode:
      return "bochner_ode";
  }
  return "?";
}

/// LHS - RHS of a polynomial identity after the shared quasi-rational factor
/// has been cleared. Zero means the identity holds exactly.
///
/// The shift and Laguerre identities are stated for Y^{(-2a)}; sign plus
/// evaluates them at a -> -a.
inline Polynomial identity_residual(Identity kind, unsigned m, const Rational& a, Sign sign) {
  const Rational signed_a = sign == Sign::minus ? Rational(a) : Rational(-a);
  const Rational alpha = -2 * signed_a;
  switch (kind) {
    case Identity::bochner_ode: {
      const OdeCoefficients ode(sign, a);
      const Polynomial f = gen_bessel_scaled(m, BesselIndex(2 * to_int(sign) * a, -2 * to_int(sign)));
      const Polynomial tau{ode.tau_const, ode.tau_linear};
      const Polynomial y2 = Polynomial::monomial(1, 2);
      return y2 * f.derivative(2) + tau * f.derivative() + f * ode.eigenshift(m);
    }
    case Identity::laguerre_connection: {
      // n! (-y/2)^n L_n^{(-alpha-2n-1)}(2/y), expanded as a polynomial in y.
      const Polynomial lag = laguerre(m, -alpha - 2 * m - 1);
      std::vector<Rational> rhs(m + 1);
      const Rational nf(factorial(m));
      for (unsigned k = 0; k <= m; ++k) {
        Rational v = nf * lag.coefficient(k) * pow(Rational(2), k) / pow(Rational(2), m);
        if (m % 2 == 1) v = -v;
        rhs[m - k] = v;
      }
      return gen_bessel(m, alpha) - Polynomial(std::move(rhs));
    }
    case Identity::backward_shift: {
      // d/dy[y^{-2a} e^{-2/y} Y_m^{(-2a)}] = 2 y^{-2a-2} e^{-2/y} Y_{m+1}^{(-2a-2)},
      // multiplied through by y^{2a+2} e^{2/y}.
      const Polynomial f = gen_bessel(m, alpha);
      const Polynomial lhs = Polynomial::monomial(1, 2) * f.derivative() +
                             Polynomial{Rational(2), -2 * signed_a} * f;
      return lhs - gen_bessel(m + 1, alpha - 2) * Rational(2);
    }
    case Identity::forward_shift: {
      if (m == 0) throw std::invalid_argument("forward_shift needs m >= 1");
      const Rational factor = Rational(m) * (Rational(m) + 1 - 2 * signed_a) / 2;
      return gen_bessel(m, alpha).derivative() - gen_bessel(m - 1, alpha + 2) * factor;
    }
  }
  throw std::invalid_argument("unknown identity");
}

}  // namespace besselw
