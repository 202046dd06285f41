#pragma once

#include <random>
#include <string>

#include "besselw/rational.hpp"

namespace besselw::test {

inline Rational Q(const std::string& s) { return parse_rational(s); }

/// Random rational in (lo, hi) with a small denominator.
inline Rational random_rational(std::mt19937& rng, int lo, int hi, int max_den = 7) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d + 1, hi * d - 1);
  Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

}  // namespace besselw::test
