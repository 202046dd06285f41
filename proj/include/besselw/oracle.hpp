#pragma once

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "besselw/error.hpp"
#include "besselw/morse.hpp"
#include "besselw/numeric.hpp"
#include "besselw/sturm.hpp"

namespace besselw {

/// Uniform grid on [x_min, x_max] split into `points` intervals; the
/// interior nodes carry the unknowns and both ends are Dirichlet.
struct Grid {
  double x_min = -4.0;
  double x_max = 14.0;
  int points = 8000;

  Grid() = default;
  Grid(double lo, double hi, int n) : x_min(lo), x_max(hi), points(n) { validate(); }

  void validate() const {
    if (!(x_min < x_max)) throw std::invalid_argument("grid needs x_min < x_max");
    if (points < 64) throw std::invalid_argument("grid needs at least 64 points");
  }
  double step() const { return (x_max - x_min) / points; }
  int interior() const { return points - 1; }
  double node(int i) const { return x_min + (i + 1) * step(); }
  /// Same domain, half the spacing.
  Grid refined() const { return Grid(x_min, x_max, 2 * points); }

  friend bool operator==(const Grid&, const Grid&) = default;
};

inline std::vector<double> grid_nodes(const Grid& g) {
  g.validate();
  std::vector<double> xs(static_cast<std::size_t>(g.interior()));
  for (int i = 0; i < g.interior(); ++i) xs[static_cast<std::size_t>(i)] = g.node(i);
  return xs;
}

/// V(e^x) at every interior node, evaluated in extended precision.
inline std::vector<double> sample_potential(const RationalFunction& V, const Grid& g) {
  g.validate();
  if (sturm_positive_roots(V.den()) > 0)
    throw inadmissible_error("potential has a pole on the positive half-line");
  const FloatPolynomial num(V.num());
  const FloatPolynomial den(V.den());
  std::vector<double> out(static_cast<std::size_t>(g.interior()));
  for (int i = 0; i < g.interior(); ++i) {
    const double x = g.node(i);
    const mpf_class y(std::exp(x), kWorkingBits);
    const mpf_class d = den(y);
    if (sgn(d) == 0) throw inadmissible_error("potential has a pole at x = " + std::to_string(x));
    const mpf_class v = num(y) / d;
    const LogMagnitude lm = log_magnitude(v);
    if (lm.log_abs > 690.0)
      throw std::overflow_error("potential overflows at x = " + std::to_string(x));
    out[static_cast<std::size_t>(i)] = lm.value();
  }
  return out;
}

struct EigenResult {
  std::vector<double> values;
  /// vectors[k] is the unit-norm eigenvector of values[k] on the interior nodes.
  std::vector<std::vector<double>> vectors;
  std::vector<double> residuals;
};

/// Lowest k eigenpairs of -d^2/dx^2 + V by second-order central differences.
inline EigenResult eigen_solve(const std::vector<double>& samples, const Grid& g, int k) {
  g.validate();
  const int n = g.interior();
  if (static_cast<int>(samples.size()) != n)
    throw std::invalid_argument("sample count does not match the grid");
  if (k < 1 || k > n) throw std::invalid_argument("requested eigenpair count out of range");
  const double h = g.step();
  const double off = -1.0 / (h * h);
  std::vector<double> d(samples.size());
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = 2.0 / (h * h) + samples[static_cast<std::size_t>(i)];
  std::vector<double> e(static_cast<std::size_t>(n), off);
  const std::vector<double> d_copy = d;

  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, k,
                                         0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0) throw convergence_error("tridiagonal eigensolver failed, info = " + std::to_string(info));
  if (found != k) throw convergence_error("eigensolver returned " + std::to_string(found) + " of " + std::to_string(k));

  EigenResult r;
  const double scale = 4.0 / (h * h) + *std::max_element(samples.begin(), samples.end(), [](double a, double b) {
    return std::fabs(a) < std::fabs(b);
  });
  std::ostringstream bad;
  for (int j = 0; j < k; ++j) {
    std::vector<double> v(z.begin() + static_cast<std::ptrdiff_t>(j) * n, z.begin() + static_cast<std::ptrdiff_t>(j + 1) * n);
    const double lambda = w[static_cast<std::size_t>(j)];
    double res = 0;
    for (int i = 0; i < n; ++i) {
      double tv = d_copy[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      if (i > 0) tv += off * v[static_cast<std::size_t>(i - 1)];
      if (i + 1 < n) tv += off * v[static_cast<std::size_t>(i + 1)];
      res = std::max(res, std::fabs(tv - lambda * v[static_cast<std::size_t>(i)]));
    }
    if (res > 1e-8 * std::fabs(scale)) bad << " [" << j << "] " << res;
    r.values.push_back(lambda);
    r.vectors.push_back(std::move(v));
    r.residuals.push_back(res);
  }
  if (!bad.str().empty()) throw convergence_error("eigenvector residuals too large:" + bad.str());
  return r;
}

/// Sign changes of an eigenvector, ignoring entries below `rel_floor` of its
/// largest magnitude so that decayed tails do not register.
inline int node_count(const std::vector<double>& vec, double rel_floor = 1e-6) {
  double peak = 0;
  for (double v : vec) peak = std::max(peak, std::fabs(v));
  if (peak == 0) return 0;
  int nodes = 0;
  int last = 0;
  for (double v : vec) {
    if (std::fabs(v) < rel_floor * peak) continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

/// Removes the O(h^2) term from two runs whose spacing differs by a factor two.
inline double richardson(double e_h, double e_h2) { return (4.0 * e_h2 - e_h) / 3.0; }

struct SpectrumOptions {
  /// Absolute tolerance on the fine raw grid.
  double raw_tol = 2e-3;
  /// Tolerance after extrapolation, scaled by max(1, |energy|).
  double extrapolated_tol = 1e-4;
  /// Eigenvalues closer than this to zero or to each other are not resolved.
  double gap_resolution = 1e-2;
  /// The search for spurious states reaches this far below the deepest level.
  double window_margin = 5.0;
};

struct LevelReport {
  int n = 0;
  Rational predicted;
  bool threshold = false;
  double coarse = 0;
  double fine = 0;
  double extrapolated = 0;
  double error = 0;
  int nodes = 0;
  bool ok = false;
};

struct SpectrumReport {
  DeformationSpec spec;
  Grid grid;
  std::vector<LevelReport> levels;
  std::vector<int> deleted;
  /// Extrapolated eigenvalues inside the search window that match no level.
  std::vector<double> extras;
  bool deleted_absent = true;
  bool extrapolated = true;
  double max_abs_err = 0;
  double window_low = 0;
  bool passed = false;
  std::vector<std::string> messages;

  std::vector<Rational> predicted() const {
    std::vector<Rational> out;
    for (const auto& l : levels) out.push_back(l.predicted);
    return out;
  }
  std::vector<double> computed() const {
    std::vector<double> out;
    for (const auto& l : levels) out.push_back(l.extrapolated);
    return out;
  }
  std::vector<int> node_counts() const {
    std::vector<int> out;
    for (const auto& l : levels) out.push_back(l.nodes);
    return out;
  }
};

namespace detail {

/// Lowest eigenpairs, enlarged until the highest one leaves the bound window.
inline EigenResult solve_through_window(const std::vector<double>& samples, const Grid& g, int k,
                                        double window_top) {
  for (;;) {
    EigenResult r = eigen_solve(samples, g, k);
    if (r.values.back() > window_top || k >= g.interior()) return r;
    k = std::min(2 * k, g.interior());
  }
}

}  // namespace detail

/// Solves the deformed problem on `grid` and on its refinement and compares
/// the extrapolated eigenvalues with the exact surviving levels.
inline SpectrumReport isospectral_check(const DeformationSpec& spec, const Grid& grid = Grid(),
                                        const SpectrumOptions& opt = SpectrumOptions()) {
  SpectrumReport rep;
  rep.spec = spec;
  rep.grid = grid;
  const std::vector<Level> predicted = bound_spectrum(spec);
  for (int n : spec.pairs.indexes()) rep.deleted.push_back(n);

  const RationalFunction V = deformed_potential(spec);
  const Grid fine_grid = grid.refined();
  const auto coarse_samples = sample_potential(V, grid);
  const auto fine_samples = sample_potential(V, fine_grid);

  double deepest = 0;
  for (const auto& l : predicted) deepest = std::max(deepest, std::fabs(to_double(l.energy)));
  rep.window_low = -(deepest + opt.window_margin);
  const double window_top = -opt.gap_resolution;

  const int want = static_cast<int>(predicted.size()) + 2;
  const EigenResult coarse = detail::solve_through_window(coarse_samples, grid, want, window_top);
  const EigenResult fine = detail::solve_through_window(fine_samples, fine_grid, want, window_top);
  const std::size_t common = std::min(coarse.values.size(), fine.values.size());
  std::vector<double> ext(common);
  for (std::size_t i = 0; i < common; ++i) ext[i] = richardson(coarse.values[i], fine.values[i]);

  bool all_ok = true;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    LevelReport lr;
    lr.n = predicted[i].n;
    lr.predicted = predicted[i].energy;
    lr.threshold = predicted[i].threshold();
    const double target = to_double(lr.predicted);
    lr.coarse = coarse.values[i];
    lr.fine = fine.values[i];
    lr.extrapolated = ext[i];
    lr.error = std::fabs(lr.extrapolated - target);
    lr.nodes = node_count(fine.vectors[i]);
    lr.ok = lr.error < opt.extrapolated_tol * std::max(1.0, std::fabs(target)) &&
            std::fabs(lr.fine - target) < opt.raw_tol;
    if (lr.threshold)
      rep.messages.push_back("level " + std::to_string(lr.n) + " sits at the zero-energy threshold");
    rep.max_abs_err = std::max(rep.max_abs_err, lr.error);
    all_ok = all_ok && lr.ok;
    rep.levels.push_back(lr);
  }

  // Every extrapolated eigenvalue in the window must be claimed by a level.
  std::vector<bool> claimed(predicted.size(), false);
  for (std::size_t i = 0; i < common; ++i) {
    const double v = ext[i];
    if (v < rep.window_low || v > window_top) continue;
    bool matched = false;
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      if (!claimed[j] && std::fabs(v - to_double(predicted[j].energy)) < opt.gap_resolution) {
        claimed[j] = matched = true;
        break;
      }
    }
    if (!matched) rep.extras.push_back(v);
  }
  if (coarse.values.front() < rep.window_low || fine.values.front() < rep.window_low)
    rep.messages.push_back("eigenvalue found below the search window");

  for (int n : rep.deleted) {
    const double e = to_double(qrs_energy(Sign::minus, static_cast<unsigned>(n), spec.param));
    for (double v : ext)
      if (std::fabs(v - e) < opt.gap_resolution) rep.deleted_absent = false;
  }
  if (!rep.deleted_absent) rep.messages.push_back("a deleted level is present in the computed spectrum");
  if (!rep.extras.empty()) rep.messages.push_back("computed spectrum has unpredicted bound states");

  rep.passed = all_ok && rep.extras.empty() && rep.deleted_absent;
  return rep;
}

}  // namespace besselw
