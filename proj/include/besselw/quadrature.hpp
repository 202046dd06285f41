#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "besselw/error.hpp"
#include "besselw/morse.hpp"
#include "besselw/quasi_rational.hpp"
#include "besselw/sturm.hpp"

namespace besselw {

/// weight(y) * left(y) * right(y) on (0, inf).
struct Integrand {
  QuasiRational weight;
  Polynomial left = Polynomial::constant(1);
  Polynomial right = Polynomial::constant(1);
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

struct QuadratureResult {
  double value = 0;
  /// Integral of |f|, the scale for relative accuracy.
  double magnitude = 0;
  double step = 0;
  double t_min = 0;
  double t_max = 0;
  int evaluations = 0;
};

namespace detail {

/// Throws divergence_error when the integrand is not integrable at 0 or infinity.
inline void check_integrable(const QuasiRational& q) {
  if (sturm_positive_roots(q.rat.den()) > 0)
    throw divergence_error("integrand has a pole on the positive half-line");
  const Rational at_inf = q.power_at_infinity();
  if (at_inf >= -1)
    throw divergence_error("integrand decays like y^(" + at_inf.get_str() + ") at infinity");
  if (q.exp_coeff > 0) throw divergence_error("integrand grows like exp(c/y) at zero");
  if (q.exp_coeff == 0) {
    const Rational at_zero = q.y_power + q.rat.num().order() - q.rat.den().order();
    if (at_zero <= -1)
      throw divergence_error("integrand behaves like y^(" + at_zero.get_str() + ") at zero");
  }
}

}  // namespace detail

/// Trapezoid rule in t = log y. The range grows until the ends are negligible
/// and the step halves until two estimates agree to rel_tol of the integral of |f|.
inline QuadratureResult integrate_half_line_detailed(const Integrand& f, double rel_tol = 1e-12) {
  QuasiRational q = f.weight;
  q.rat = q.rat * RationalFunction(f.left * f.right);
  if (q.rat.is_zero()) return {};
  detail::check_integrable(q);
  // dy = y dt
  q.y_power += 1;
  const QuasiRationalEvaluator eval(q);
  QuadratureResult res;
  auto g = [&](double t) {
    ++res.evaluations;
    return eval.log_at(std::exp(t));
  };

  // Locate the peak of log|g| on a coarse scan, then extend both ends until
  // the integrand is far below it.
  double peak_t = 0;
  double peak = -std::numeric_limits<double>::infinity();
  for (double t = -8; t <= 40; t += 0.25) {
    const LogMagnitude v = g(t);
    if (v.sign != 0 && v.log_abs > peak) {
      peak = v.log_abs;
      peak_t = t;
    }
  }
  if (!std::isfinite(peak)) return {};
  const double cutoff = peak + std::log(rel_tol) - 8.0;
  double lo = peak_t - 1;
  double hi = peak_t + 1;
  while (lo > -700) {
    const LogMagnitude v = g(lo);
    if (v.sign == 0 || v.log_abs < cutoff) break;
    lo -= 1;
  }
  while (hi < 700) {
    const LogMagnitude v = g(hi);
    if (v.sign == 0 || v.log_abs < cutoff) break;
    hi += 1;
  }
  // Slow power tails: keep going until the remaining tail integral is small.
  const double tail_rate = Rational(-q.power_at_infinity()).get_d();
  while (hi < 700) {
    const LogMagnitude v = g(hi);
    if (v.sign == 0 || v.log_abs - std::log(tail_rate) < cutoff) break;
    hi += 1;
  }
  res.t_min = lo;
  res.t_max = hi;

  // Values are kept relative to exp(peak) so the sums never overflow.
  auto value = [&](double t) {
    const LogMagnitude v = g(t);
    return v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs - peak);
  };

  double h = 0.5;
  const int n0 = static_cast<int>(std::ceil((hi - lo) / h));
  h = (hi - lo) / n0;
  CompensatedSum sum;
  CompensatedSum abs_sum;
  for (int i = 0; i <= n0; ++i) {
    const double v = value(lo + i * h);
    const double w = (i == 0 || i == n0) ? 0.5 : 1.0;
    sum.add(w * v);
    abs_sum.add(w * std::fabs(v));
  }
  double estimate = h * sum.value();
  int n = n0;
  for (int level = 0; level < 16; ++level) {
    // Midpoints of the current panels.
    for (int i = 0; i < n; ++i) {
      const double v = value(lo + (i + 0.5) * h);
      sum.add(v);
      abs_sum.add(std::fabs(v));
    }
    n *= 2;
    h /= 2;
    const double next = h * sum.value();
    const double magnitude = h * abs_sum.value();
    if (std::fabs(next - estimate) <= rel_tol * magnitude && level >= 1) {
      const double scale = std::exp(peak);
      res.value = next * scale;
      res.magnitude = magnitude * scale;
      res.step = h;
      return res;
    }
    estimate = next;
  }
  throw convergence_error("half-line quadrature did not converge to " + std::to_string(rel_tol));
}

inline double integrate_half_line(const Integrand& f, double rel_tol = 1e-12) {
  return integrate_half_line_detailed(f, rel_tol).value;
}

struct GramReport {
  std::vector<int> levels;
  std::vector<std::vector<double>> matrix;
  /// max |G_ij| / sqrt(G_ii G_jj) over i != j.
  double max_offdiag_ratio = 0;
  bool diagonal_positive = true;
  double max_asymmetry = 0;
};

/// Gram matrix of the eigen-numerator Wronskians of the listed levels.
inline GramReport gram_matrix(const DeformationSpec& spec, const std::vector<int>& levels,
                              double rel_tol = 1e-12,
                              WeightConvention conv = WeightConvention::schrodinger) {
  GramReport r;
  r.levels = levels;
  const QuasiRational w = eop_weight(spec, conv);
  std::vector<Polynomial> polys;
  for (int n : levels) polys.push_back(eigen_numerator(spec, n));
  const std::size_t k = polys.size();
  r.matrix.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r.matrix[i][j] = integrate_half_line({w, polys[i], polys[j]}, rel_tol);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(r.matrix[i][i] > 0)) r.diagonal_positive = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double scale = std::sqrt(std::fabs(r.matrix[i][i] * r.matrix[j][j]));
      r.max_offdiag_ratio = std::max(r.max_offdiag_ratio, std::fabs(r.matrix[i][j]) / scale);
      r.max_asymmetry = std::max(r.max_asymmetry, std::fabs(r.matrix[i][j] - r.matrix[j][i]) / scale);
    }
  }
  return r;
}

/// Closed form n! Gamma(2A+1-n) / (2A-2n-1) for the squared norm of B_n^{(A)}
/// under y^{-2A-1} e^{-2/y}, as commonly tabulated. Empty when the formula
/// divides by zero. Measurements disagree with it; see diagonal_norm_ratio.
inline std::optional<double> tabulated_rbessel_norm(int n, const Rational& A) {
  const double twoA = Rational(2 * A).get_d();
  const double den = twoA - 2 * n - 1;
  if (den == 0) return std::nullopt;
  return std::tgamma(n + 1.0) * std::tgamma(twoA + 1 - n) / den;
}

struct NormComparison {
  int n = 0;
  double measured = 0;
  std::optional<double> tabulated;
  /// measured / tabulated when both exist.
  std::optional<double> ratio;
};

/// Measures int B_n^2 y^{-2A-1} e^{-2/y} dy and sets it against the tabulated value.
inline NormComparison diagonal_norm_ratio(int n, const Rational& A, double rel_tol = 1e-12) {
  NormComparison c;
  c.n = n;
  const Polynomial b = rbessel(static_cast<unsigned>(n), A);
  const QuasiRational w{-2 * A - 1, Rational(-2), RationalFunction(Polynomial::constant(1))};
  c.measured = integrate_half_line({w, b, b}, rel_tol);
  c.tabulated = tabulated_rbessel_norm(n, A);
  if (c.tabulated && *c.tabulated != 0) c.ratio = c.measured / *c.tabulated;
  return c;
}

}  // namespace besselw
