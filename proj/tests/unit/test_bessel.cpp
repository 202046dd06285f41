#include <gtest/gtest.h>

#include <random>

#include "besselw/bessel.hpp"
#include "besselw/sturm.hpp"
#include "test_support.hpp"

using namespace besselw;
using besselw::test::Q;

TEST(GenBessel, Examples) {
  EXPECT_EQ(gen_bessel(0, Q("17/3")), Polynomial{1});
  EXPECT_EQ(gen_bessel(1, -6), (Polynomial{1, -2}));
  EXPECT_EQ(gen_bessel(2, -6), (Polynomial{1, -3, Q("3/2")}));
  EXPECT_EQ(gen_bessel(2, 3), (Polynomial{1, 6, Q("21/2")}));
}

// Direct term-by-term sum with the rising product written out.
TEST(GenBessel, MatchesHypergeometricSum) {
  for (unsigned n = 0; n <= 8; ++n)
    for (const Rational& alpha : {Rational(-7), Q("5/3"), Rational(0), Q("-11/2")}) {
      std::vector<Rational> c(n + 1);
      for (unsigned k = 0; k <= n; ++k) {
        Rational prod = 1;
        for (unsigned j = 1; j <= k; ++j) prod *= Rational(n) + alpha + j;
        Rational binom = 1;
        for (unsigned j = 0; j < k; ++j) binom = binom * Rational(n - j) / Rational(j + 1);
        Rational half = 1;
        for (unsigned j = 0; j < k; ++j) half /= 2;
        c[k] = binom * prod * half;
      }
      EXPECT_EQ(gen_bessel(n, alpha), Polynomial(c));
    }
}

TEST(GenBesselScaled, Examples) {
  for (unsigned n = 0; n < 6; ++n) EXPECT_EQ(gen_bessel_scaled(n, {Q("7/2"), 2}), gen_bessel(n, Q("7/2")));
  EXPECT_EQ(gen_bessel_scaled(1, {3, -2}), (Polynomial{1, Q("-5/2")}));
  EXPECT_EQ(gen_bessel_scaled(2, {0, -2}), (Polynomial{1, -3, 3}));
  EXPECT_THROW(BesselIndex(1, 0), std::invalid_argument);
}

TEST(RBessel, Examples) {
  EXPECT_EQ(rbessel(0, Q("5/2")), Polynomial{1});
  EXPECT_EQ(rbessel(1, Q("5/2")), (Polynomial{1, -2}));
  EXPECT_EQ(rbessel(2, Q("5/2")), (Polynomial{1, -3, Q("3/2")}));
}

TEST(RBessel, WarnsOutsideOrthogonalRange) {
  static int warnings = 0;
  const auto old = set_warning_handler([](const std::string&) { ++warnings; });
  rbessel(3, Q("5/2"));
  set_warning_handler(old);
  EXPECT_EQ(warnings, 1);
}

TEST(Laguerre, Examples) {
  EXPECT_EQ(laguerre(0, Q("2/3")), Polynomial{1});
  const Rational alpha = Q("2/9");
  EXPECT_EQ(laguerre(1, alpha), (Polynomial{1 + alpha, -1}));
  EXPECT_EQ(laguerre(1, -6), (Polynomial{-5, -1}));
}

// Three-term recurrence (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.
TEST(Laguerre, Recurrence) {
  const Rational alpha = Q("-13/4");
  for (unsigned n = 1; n < 10; ++n) {
    const Polynomial lhs = laguerre(n + 1, alpha) * Rational(n + 1);
    const Polynomial rhs = Polynomial{Rational(2 * n + 1) + alpha, -1} * laguerre(n, alpha) -
                           laguerre(n - 1, alpha) * (Rational(n) + alpha);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Identities, Examples) {
  EXPECT_TRUE(identity_residual(Identity::bochner_ode, 1, 3, Sign::minus).is_zero());
  EXPECT_TRUE(identity_residual(Identity::bochner_ode, 2, 3, Sign::minus).is_zero());
  for (const Rational& a : {Rational(3), Q("5/7"), Q("-9/4")})
    EXPECT_TRUE(identity_residual(Identity::laguerre_connection, 1, a, Sign::minus).is_zero());
  EXPECT_THROW(identity_residual(Identity::forward_shift, 0, 3, Sign::minus), std::invalid_argument);
}

TEST(Identities, BochnerForRandomParameters) {
  std::mt19937 rng(31);
  for (int t = 0; t < 20; ++t) {
    const Rational a = besselw::test::random_rational(rng, 1, 20) / 2;
    for (unsigned n = 0; n <= 12; ++n)
      for (Sign s : {Sign::minus, Sign::plus})
        EXPECT_TRUE(identity_residual(Identity::bochner_ode, n, a, s).is_zero()) << n << " a=" << a;
  }
}

TEST(Identities, ShiftAndLaguerre) {
  for (const Rational& a : {Rational(1), Q("3/2"), Rational(3), Q("9/2"), Q("7/3")})
    for (unsigned n = 1; n <= 10; ++n)
      for (Identity id : {Identity::laguerre_connection, Identity::forward_shift, Identity::backward_shift})
        for (Sign s : {Sign::minus, Sign::plus})
          EXPECT_TRUE(identity_residual(id, n, a, s).is_zero()) << to_string(id) << " n=" << n << " a=" << a;
}

// A wrong eigenvalue must leave a residual: the check is not vacuous.
TEST(Identities, DetectsWrongConvention) {
  const Polynomial f = gen_bessel_scaled(3, {-6, -2});  // plus-type argument in the minus equation
  const OdeCoefficients ode(Sign::minus, 3);
  const Polynomial r = Polynomial::monomial(1, 2) * f.derivative(2) + Polynomial{ode.tau_const, ode.tau_linear} * f.derivative() +
                       f * ode.eigenshift(3);
  EXPECT_FALSE(r.is_zero());
}

TEST(Degree, ExactWhenNonDegenerate) {
  for (const Rational& a : {Rational(1), Q("3/2"), Q("5/2"), Rational(3), Q("9/2"), Q("7/3")})
    for (unsigned m = 0; m <= 14; ++m) {
      if (Rational(m) > 2 * a - 1 || Rational(m) < a - Rational(1, 2)) {
        EXPECT_EQ(gen_bessel(m, -2 * a).degree(), static_cast<int>(m)) << "m=" << m << " a=" << a;
      }
    }
}

TEST(Degree, DropsInsideTheGap) {
  // m = 3, a = 5/2: one factor of the top rising product is zero.
  EXPECT_LT(gen_bessel(3, -5).degree(), 3);
}

TEST(NegativeArgument, NoPositiveZerosAboveTwoAMinusOne) {
  for (const Rational& a : {Rational(1), Q("3/2"), Q("5/2")}) {
    const Rational lo = 2 * a - 1;
    for (unsigned m = 1; Rational(m) <= 2 * a + 10; ++m)
      if (Rational(m) > lo) {
        EXPECT_EQ(sturm_positive_roots(gen_bessel(m, -2 * a)), 0) << "m=" << m << " a=" << a;
      }
  }
}

TEST(RBessel, OscillationCount) {
  for (const Rational& A : {Q("5/2"), Q("9/2"), Q("13/2"), Q("17/3")})
    for (unsigned n = 0; Rational(n) < A; ++n) EXPECT_EQ(sturm_positive_roots(rbessel(n, A)), static_cast<int>(n));
}
