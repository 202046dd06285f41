#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "besselw/polynomial.hpp"

namespace besselw {

using PolynomialMatrix = std::vector<std::vector<Polynomial>>;

/// Fraction-free (Bareiss) determinant of a square matrix over Q[y].
/// Every intermediate division is exact by Sylvester's identity.
inline Polynomial determinant(PolynomialMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  bool negate = false;
  Polynomial prev = Polynomial::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k].is_zero()) ++pivot;
      if (pivot == n) return {};
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = exact_divide(t, prev);
      }
      m[i][k] = Polynomial{};
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// W{p_1, ..., p_k}: determinant whose row i holds the i-th derivatives.
inline Polynomial wronskian(std::span<const Polynomial> ps) {
  if (ps.empty()) throw std::invalid_argument("wronskian of an empty list");
  const std::size_t k = ps.size();
  if (k == 1) return ps[0];
  PolynomialMatrix m(k, std::vector<Polynomial>(k));
  for (std::size_t j = 0; j < k; ++j) {
    Polynomial d = ps[j];
    for (std::size_t i = 0; i < k; ++i) {
      m[i][j] = d;
      d = d.derivative();
    }
  }
  return determinant(std::move(m));
}

inline Polynomial wronskian(const std::vector<Polynomial>& ps) {
  return wronskian(std::span<const Polynomial>(ps));
}

}  // namespace besselw
