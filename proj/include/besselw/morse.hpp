#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "besselw/bessel.hpp"
#include "besselw/error.hpp"
#include "besselw/partitions.hpp"
#include "besselw/quasi_rational.hpp"
#include "besselw/sturm.hpp"
#include "besselw/wronskian.hpp"

namespace besselw {

enum class ThresholdPolicy { reject, allow };

/// Morse parameter a. When 2a is an odd integer the top level sits at zero
/// energy; such values are refused unless the caller opts in.
class MorseParam {
 public:
  MorseParam() = default;
  explicit MorseParam(Rational a, ThresholdPolicy policy = ThresholdPolicy::reject)
      : a_(std::move(a)) {
    if (policy == ThresholdPolicy::reject && is_threshold())
      throw std::invalid_argument("a = " + a_.get_str() +
                                  " puts a level at the zero-energy threshold (2a odd)");
  }

  const Rational& a() const { return a_; }
  /// A = a - 1/2.
  Rational A() const { return a_ - Rational(1, 2); }
  /// Highest eigen-index floor(A); -1 when there are no bound states.
  int N() const { return a_ > Rational(1, 2) ? static_cast<int>(floor(A()).get_si()) : -1; }
  bool is_threshold() const {
    const Rational twice = 2 * a_;
    return is_integer(twice) && twice.get_num() % 2 != 0;
  }
  /// a + delta; shifted parameters are intermediate objects, never refused.
  MorseParam shifted(const Rational& delta) const {
    return MorseParam(a_ + delta, ThresholdPolicy::allow);
  }

  friend bool operator==(const MorseParam& l, const MorseParam& r) { return l.a_ == r.a_; }

 private:
  Rational a_ = 0;
};

// ---------------------------------------------------------------------------
// Undeformed problem

/// V(y) = -2a/y + 1/y^2 with y = e^x.
inline RationalFunction morse_potential(const Rational& a) {
  return RationalFunction::normalize(Polynomial{Rational(1), -2 * a}, Polynomial::monomial(1, 2));
}
inline RationalFunction morse_potential(const MorseParam& p) { return morse_potential(p.a()); }

/// Energy of the m-th quasi-rational solution: -(m + 1/2 +- a)^2.
inline Rational qrs_energy(Sign sign, unsigned m, const MorseParam& p) {
  const Rational t = Rational(m) + Rational(1, 2) + to_int(sign) * p.a();
  return -t * t;
}

/// Basic solution y^{1 +- a} e^{+-1/y}.
inline QuasiRational basic_solution(Sign sign, const MorseParam& p) {
  return {1 + to_int(sign) * p.a(), Rational(to_int(sign)), Polynomial::constant(1)};
}

/// 2^m Y_m^{(+-2a, -+2)}(y), the polynomial part of the m-th seed solution.
inline Polynomial seed_polynomial(Sign sign, unsigned m, const MorseParam& p) {
  const int s = to_int(sign);
  return gen_bessel_scaled(m, BesselIndex(2 * s * p.a(), Rational(-2 * s))) *
         pow(Rational(2), m);
}

inline QuasiRational seed_solution(Sign sign, unsigned m, const MorseParam& p) {
  QuasiRational q = basic_solution(sign, p);
  q.rat = seed_polynomial(sign, m, p);
  return q;
}

/// Polynomial Wronskian of the seeds, indexes ascending.
inline Polynomial seed_wronskian(const SeedSet& set, const MorseParam& p) {
  if (set.empty()) throw std::invalid_argument("seed_wronskian of an empty set");
  std::vector<Polynomial> ps;
  ps.reserve(set.size());
  for (int m : set.indexes()) ps.push_back(seed_polynomial(set.sign(), static_cast<unsigned>(m), p));
  return wronskian(ps);
}

/// sum(m) - p(p-1)/2, the degree of a non-degenerate seed Wronskian.
inline int wronskian_degree_formula(const SeedSet& set) {
  const int p = static_cast<int>(set.size());
  return set.sum() - p * (p - 1) / 2;
}

// ---------------------------------------------------------------------------
// Deformations

/// Morse parameter plus minus-type seeds: juxtaposed eigen-pairs to delete and
/// state-free (virtual) seeds that keep the spectrum.
struct DeformationSpec {
  MorseParam param;
  SeedSet pairs{Sign::minus, {}};
  SeedSet virtuals{Sign::minus, {}};

  /// Union of both seed lists, ascending.
  SeedSet combined() const {
    std::vector<int> all = pairs.indexes();
    all.insert(all.end(), virtuals.indexes().begin(), virtuals.indexes().end());
    return SeedSet(Sign::minus, std::move(all));
  }
  int seed_count() const { return static_cast<int>(pairs.size() + virtuals.size()); }
  bool undeformed() const { return pairs.empty() && virtuals.empty(); }
  bool overlapping() const {
    for (int m : virtuals.indexes())
      if (pairs.contains(m)) return true;
    return false;
  }

  friend bool operator==(const DeformationSpec&, const DeformationSpec&) = default;
};

inline std::string to_string(const DeformationSpec& s) {
  return "a=" + s.param.a().get_str() + " pairs" + to_string(s.pairs).substr(1) + " virtuals" +
         to_string(s.virtuals).substr(1);
}

/// Combined seed Wronskian; the constant 1 for an undeformed spec.
inline Polynomial spec_wronskian(const DeformationSpec& s) {
  if (s.undeformed()) return Polynomial::constant(1);
  return seed_wronskian(s.combined(), s.param);
}

struct BoundCheck {
  int index = 0;
  enum class Kind { pair, virtual_seed } kind = Kind::virtual_seed;
  bool ok = false;
  std::string reason;

  friend bool operator==(const BoundCheck&, const BoundCheck&) = default;
};

struct AdmissibilityCertificate {
  bool ok = false;
  /// -1 when the Wronskian vanishes identically or pairs and virtuals overlap.
  int wronskian_positive_roots = 0;
  std::vector<BoundCheck> bound_check;
  int wronskian_degree = 0;
  std::vector<std::string> messages;

  friend bool operator==(const AdmissibilityCertificate&, const AdmissibilityCertificate&) = default;
};

namespace detail {

inline AdmissibilityCertificate certify(const DeformationSpec& s, bool report_warnings) {
  AdmissibilityCertificate c;
  const Rational virtual_floor = 2 * s.param.a() - 1;
  const int N = s.param.N();
  bool bounds_ok = true;

  for (int m : s.virtuals.indexes()) {
    BoundCheck b{m, BoundCheck::Kind::virtual_seed, Rational(m) > virtual_floor, {}};
    if (!b.ok) b.reason = std::to_string(m) + " <= 2a-1 = " + virtual_floor.get_str();
    if (s.pairs.contains(m)) {
      b.ok = false;
      b.reason = "index also listed as a pair";
    }
    bounds_ok = bounds_ok && b.ok;
    c.bound_check.push_back(std::move(b));
  }

  const JuxtaposedPairs jp = is_juxtaposed_pairs(s.pairs);
  if (!jp.ok) c.messages.push_back("pairs do not decompose into even consecutive runs");
  for (int m : s.pairs.indexes()) {
    BoundCheck b{m, BoundCheck::Kind::pair, jp.ok && m <= N, {}};
    if (!jp.ok) b.reason = "not part of an even run";
    else if (m > N) b.reason = std::to_string(m) + " > N(a) = " + std::to_string(N);
    bounds_ok = bounds_ok && b.ok;
    c.bound_check.push_back(std::move(b));
  }
  if (!s.pairs.empty() && s.pairs.max() == N) {
    c.messages.push_back("top eigen-pair deleted (max pair index equals N(a))");
    if (report_warnings) warn("deleting the top pair: max(pairs) = N(a) = " + std::to_string(N));
  }

  if (s.overlapping()) {
    c.messages.push_back("pairs and virtuals overlap");
    c.wronskian_positive_roots = -1;
    c.wronskian_degree = -1;
    return c;
  }

  const Polynomial w = spec_wronskian(s);
  if (w.is_zero()) {
    c.wronskian_positive_roots = -1;
    c.wronskian_degree = -1;
    c.messages.push_back("seed Wronskian vanishes identically");
    c.ok = false;
    return c;
  }
  c.wronskian_degree = w.degree();
  c.wronskian_positive_roots = sturm_positive_roots(w);
  c.ok = bounds_ok && c.wronskian_positive_roots == 0;
  return c;
}

}  // namespace detail

inline AdmissibilityCertificate certify_admissible(const DeformationSpec& s) { return detail::certify(s, true); }

struct Level {
  int n = 0;
  Rational energy;

  bool threshold() const { return energy == 0; }
  friend bool operator==(const Level&, const Level&) = default;
};

/// Levels -(n + 1/2 - a)^2 for 0 <= n <= N(a) with deleted pairs removed.
inline std::vector<Level> bound_spectrum(const DeformationSpec& s) {
  const auto cert = detail::certify(s, false);
  if (!cert.ok) throw inadmissible_error("bound_spectrum of inadmissible spec " + to_string(s));
  std::vector<Level> out;
  for (int n = 0; n <= s.param.N(); ++n)
    if (!s.pairs.contains(n)) out.push_back({n, qrs_energy(Sign::minus, static_cast<unsigned>(n), s.param)});
  std::sort(out.begin(), out.end(), [](const Level& l, const Level& r) { return l.energy < r.energy; });
  return out;
}

namespace detail {

/// V_Morse(shifted_a) - 2 y d/dy (y W'/W).
inline RationalFunction darboux_potential(const Rational& shifted_a, const Polynomial& w) {
  if (w.is_zero()) throw inadmissible_error("seed Wronskian vanishes identically");
  const RationalFunction log_term =
      RationalFunction::normalize(Polynomial::y() * w.derivative(), w);
  const RationalFunction correction =
      RationalFunction(Polynomial::monomial(-2, 1)) * log_term.derivative();
  return morse_potential(shifted_a) + correction;
}

}  // namespace detail

/// V_Morse(a - q) - 2 y d/dy (y W'/W), q = number of seeds.
inline RationalFunction deformed_potential(const DeformationSpec& s, bool force = false) {
  if (s.undeformed()) return morse_potential(s.param);
  if (!force) {
    const auto cert = detail::certify(s, false);
    if (!cert.ok) throw inadmissible_error("deformed_potential of inadmissible spec " + to_string(s));
  }
  return detail::darboux_potential(s.param.a() - s.seed_count(), spec_wronskian(s));
}

/// Potential generated by plus-type seeds: V_Morse(a + p) - 2 y d/dy (y W'/W).
/// Used to cross-check conjugate seed sets; no admissibility is implied.
inline RationalFunction plus_deformed_potential(const SeedSet& plus, const MorseParam& p) {
  if (plus.sign() != Sign::plus) throw std::invalid_argument("expected a plus-type seed set");
  return detail::darboux_potential(p.a() + static_cast<int>(plus.size()), seed_wronskian(plus, p));
}

/// Wronskian of the seeds with the n-th eigen-polynomial appended last.
inline Polynomial eigen_numerator(const DeformationSpec& s, int n) {
  if (n < 0 || n > s.param.N()) throw std::invalid_argument("eigen index outside 0..N(a)");
  if (s.pairs.contains(n)) throw std::invalid_argument("eigen index " + std::to_string(n) + " was deleted");
  std::vector<Polynomial> ps;
  const SeedSet seeds = s.combined();
  for (int m : seeds.indexes()) ps.push_back(seed_polynomial(Sign::minus, static_cast<unsigned>(m), s.param));
  ps.push_back(seed_polynomial(Sign::minus, static_cast<unsigned>(n), s.param));
  return wronskian(ps);
}

/// Psi_n = y^{1/2-(a-q)} e^{-1/y} W_aug / W.
inline QuasiRational deformed_eigenfunction(const DeformationSpec& s, int n) {
  const Polynomial num = eigen_numerator(s, n);
  return {Rational(1, 2) - (s.param.a() - s.seed_count()), Rational(-1),
          RationalFunction::normalize(num, spec_wronskian(s))};
}

/// Powers of y in the orthogonality weight. `schrodinger` carries the extra
/// y^{-1} from dx = dy/y; `literal` omits it.
enum class WeightConvention { schrodinger, literal };

/// y^{-2(a-q)} e^{-2/y} / W^2 for the default convention.
inline QuasiRational eop_weight(const DeformationSpec& s,
                                WeightConvention conv = WeightConvention::schrodinger) {
  const Polynomial w = spec_wronskian(s);
  Rational power = -2 * (s.param.a() - s.seed_count());
  if (conv == WeightConvention::literal) power += 1;
  return {power, Rational(-2), RationalFunction::normalize(Polynomial::constant(1), w * w)};
}

// ---------------------------------------------------------------------------
// Equivalence of conjugate seed sets

struct EquivalenceReport {
  SeedSet set;
  SeedSet dual;
  int shift = 0;
  Rational a;
  /// Monic Wronskians equal at the literal parameters.
  bool monic_equal = false;
  /// Leading-coefficient ratio W_set / W_dual; zero when either side vanishes.
  Rational proportionality = 0;
  /// One side vanished identically at the literal parameters.
  bool degenerate = false;
  /// Monic forms of the leading-order Wronskians in a -> a + t agree.
  bool limit_equal = false;
  Polynomial lhs_monic;
  Polynomial rhs_monic;

  bool passed() const { return monic_equal || (degenerate && limit_equal); }
};

/// Lowest-order coefficient in t of W(y; a + t), recovered by exact Newton
/// interpolation over t = 1..D+1 where D bounds the t-degree.
inline Polynomial leading_order_wronskian(const SeedSet& set, const Rational& a) {
  const int D = set.sum();
  std::vector<Rational> ts;
  std::vector<Polynomial> values;
  for (int i = 1; i <= D + 1; ++i) {
    ts.emplace_back(i);
    values.push_back(seed_wronskian(set, MorseParam(a + i, ThresholdPolicy::allow)));
  }
  // Divided differences, one y-polynomial per node.
  std::vector<Polynomial> coef = values;
  for (std::size_t j = 1; j < coef.size(); ++j)
    for (std::size_t i = coef.size() - 1; i >= j; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j]);
  // Expand the Newton form into powers of t, keeping y-polynomial coefficients.
  std::vector<Polynomial> power(coef.size());
  for (std::size_t k = coef.size(); k-- > 0;) {
    // power <- power * (t - ts[k]) + coef[k]
    std::vector<Polynomial> next(power.size());
    for (std::size_t d = 0; d < power.size(); ++d) {
      if (power[d].is_zero()) continue;
      if (d + 1 < next.size()) next[d + 1] += power[d];
      next[d] -= power[d] * ts[k];
    }
    next[0] += coef[k];
    power = std::move(next);
  }
  for (const auto& p : power)
    if (!p.is_zero()) return p;
  return {};
}

inline EquivalenceReport verify_equivalence(const SeedSet& set, const MorseParam& p) {
  EquivalenceReport r;
  const ConjugationResult conj = conjugate(set);
  r.set = set;
  r.dual = conj.dual;
  r.shift = conj.parameter_shift;
  r.a = p.a();
  const MorseParam dual_param = p.shifted(conj.parameter_shift);
  Polynomial lhs = seed_wronskian(set, p);
  Polynomial rhs = seed_wronskian(conj.dual, dual_param);
  if (!lhs.is_zero() && !rhs.is_zero()) {
    r.lhs_monic = lhs.monic();
    r.rhs_monic = rhs.monic();
    r.monic_equal = r.lhs_monic == r.rhs_monic;
    r.proportionality = lhs.leading() / rhs.leading();
    return r;
  }
  r.degenerate = true;
  if (lhs.is_zero()) lhs = leading_order_wronskian(set, p.a());
  if (rhs.is_zero()) rhs = leading_order_wronskian(conj.dual, dual_param.a());
  if (lhs.is_zero() || rhs.is_zero()) return r;
  r.lhs_monic = lhs.monic();
  r.rhs_monic = rhs.monic();
  r.limit_equal = r.lhs_monic == r.rhs_monic;
  return r;
}

}  // namespace besselw
