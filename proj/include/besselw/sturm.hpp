#pragma once

#include <stdexcept>
#include <vector>

#include "besselw/polynomial.hpp"

namespace besselw {

/// Squarefree part p / gcd(p, p'), returned primitive.
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  const Polynomial g = gcd(p, p.derivative());
  return primitive_part(exact_divide(p, g));
}

/// Sturm chain p, p', -rem(...), ... with every member rescaled by a positive
/// constant to integer-primitive form.
inline std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain;
  chain.push_back(primitive_part(p));
  if (p.degree() <= 0) return chain;
  chain.push_back(primitive_part(p.derivative()));
  while (chain.back().degree() > 0) {
    Polynomial r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(primitive_part(-r));
  }
  return chain;
}

/// 1 + max |a_k / a_n|: every root has modulus strictly below this value.
inline Rational cauchy_root_bound(const Polynomial& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coefficient(static_cast<std::size_t>(k))) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

namespace detail {

template <typename SignAt>
int sign_variations(const std::vector<Polynomial>& chain, SignAt sign_at) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sign_at(q);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// Number of distinct real roots in (0, inf). Repeated roots count once.
inline int sturm_positive_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("sturm_positive_roots of the zero polynomial");
  const Polynomial sq = squarefree_part(p);
  if (sq.degree() <= 0) return 0;
  const auto chain = sturm_chain(sq);
  // Sign just right of zero is the sign of the lowest nonzero coefficient.
  const int at_zero = detail::sign_variations(chain, [](const Polynomial& q) {
    const int o = q.order();
    return o < 0 ? 0 : sgn(q.coefficients()[static_cast<std::size_t>(o)]);
  });
  const Rational bound = cauchy_root_bound(sq);
  const int at_bound =
      detail::sign_variations(chain, [&bound](const Polynomial& q) { return sgn(q(bound)); });
  return at_zero - at_bound;
}

}  // namespace besselw
