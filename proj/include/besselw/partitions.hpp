#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "besselw/bessel.hpp"

namespace besselw {

/// Strictly increasing list of positive seed indexes of one type.
class SeedSet {
 public:
  SeedSet() = default;
  SeedSet(Sign s, std::vector<int> indexes) : sign_(s), idx_(std::move(indexes)) {
    std::sort(idx_.begin(), idx_.end());
    if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
      throw std::invalid_argument("seed set contains a repeated index");
    if (!idx_.empty() && idx_.front() < 1)
      throw std::invalid_argument("seed indexes must be >= 1");
  }

  Sign sign() const { return sign_; }
  const std::vector<int>& indexes() const { return idx_; }
  bool empty() const { return idx_.empty(); }
  std::size_t size() const { return idx_.size(); }
  int max() const { return idx_.empty() ? 0 : idx_.back(); }
  int sum() const {
    int s = 0;
    for (int m : idx_) s += m;
    return s;
  }
  bool contains(int m) const { return std::binary_search(idx_.begin(), idx_.end(), m); }

  friend bool operator==(const SeedSet& a, const SeedSet& b) {
    return a.sign_ == b.sign_ && a.idx_ == b.idx_;
  }
  friend bool operator<(const SeedSet& a, const SeedSet& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    return a.idx_ < b.idx_;
  }

 private:
  Sign sign_ = Sign::minus;
  std::vector<int> idx_;
};

inline std::string to_string(const SeedSet& s) {
  std::string out(1, to_char(s.sign()));
  out += '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.indexes()[i]);
  }
  return out + '}';
}

struct ConjugationResult {
  SeedSet dual;
  /// Translation of the Morse parameter that accompanies the flip.
  int parameter_shift = 0;
};

/// Maya-diagram flip: complement of the set inside {0..m_max}, reflected
/// through m_max, with the seed type reversed.
inline ConjugationResult conjugate(const SeedSet& s) {
  if (s.empty()) throw std::invalid_argument("conjugate of an empty seed set");
  const int top = s.max();
  std::vector<int> dual;
  for (int m = 0; m <= top; ++m)
    if (!s.contains(m)) dual.push_back(top - m);
  const int shift = s.sign() == Sign::minus ? -(top + 1) : top + 1;
  return {SeedSet(flip(s.sign()), std::move(dual)), shift};
}

/// Alternating gap/run lengths of the Maya diagram read from 0 upward:
/// gaps[l] empty positions followed by runs[l] occupied ones.
struct PartitionPair {
  std::vector<int> gaps;
  std::vector<int> runs;

  friend bool operator==(const PartitionPair&, const PartitionPair&) = default;
};

inline PartitionPair partition_encoding(const SeedSet& s) {
  PartitionPair p;
  int cursor = 0;
  std::size_t i = 0;
  const auto& idx = s.indexes();
  while (i < idx.size()) {
    p.gaps.push_back(idx[i] - cursor);
    int run = 1;
    while (i + 1 < idx.size() && idx[i + 1] == idx[i] + 1) {
      ++run;
      ++i;
    }
    p.runs.push_back(run);
    cursor = idx[i] + 1;
    ++i;
  }
  return p;
}

inline SeedSet partition_to_set(Sign sign, const PartitionPair& p) {
  if (p.gaps.size() != p.runs.size()) throw std::invalid_argument("partition lengths differ");
  std::vector<int> idx;
  int cursor = 0;
  for (std::size_t l = 0; l < p.gaps.size(); ++l) {
    if (p.gaps[l] < 0 || p.runs[l] <= 0 || (l > 0 && p.gaps[l] == 0))
      throw std::invalid_argument("partition entries must separate nonempty runs");
    cursor += p.gaps[l];
    for (int k = 0; k < p.runs[l]; ++k) idx.push_back(cursor++);
  }
  return SeedSet(sign, std::move(idx));
}

struct JuxtaposedPairs {
  bool ok = false;
  std::vector<std::vector<int>> segments;
};

/// True when the indexes split into maximal consecutive runs that all have
/// even length; the runs are returned either way.
inline JuxtaposedPairs is_juxtaposed_pairs(const SeedSet& s) {
  JuxtaposedPairs r;
  r.ok = true;
  for (int m : s.indexes()) {
    if (r.segments.empty() || r.segments.back().back() + 1 != m) r.segments.emplace_back();
    r.segments.back().push_back(m);
  }
  for (const auto& seg : r.segments)
    if (seg.size() % 2 != 0) r.ok = false;
  if (!s.empty() && s.indexes().front() < 1) r.ok = false;
  return r;
}

}  // namespace besselw
