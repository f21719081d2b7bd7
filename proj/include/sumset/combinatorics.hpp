#pragma once

// Exact integer combinatorics over compositions ("sum vectors").
//
// A sum vector x = (x_1..x_k) is a k-tuple of nonnegative integers with
// x_1 + ... + x_k = h. The set of all of them, X_{h,k}, indexes the h-fold
// sums of a k-element set, and |X_{h,k}| = M_{h,k} = C(h+k-1, k-1) is the
// largest possible size of hA when |A| = k.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sumset/budget.hpp"
#include "sumset/error.hpp"

namespace sumset {

using Count = std::uint64_t;

inline Count checked_add(Count a, Count b) {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("count addition overflows 64 bits");
  return out;
}

inline Count checked_mul(Count a, Count b) {
  Count out;
  if (__builtin_mul_overflow(a, b, &out))
    throw OverflowError("count multiplication overflows 64 bits");
  return out;
}

// C(n, r), exact. Intermediates are carried in 128 bits so that only a
// result that itself exceeds 64 bits is reported as overflow.
inline Count binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    // acc * (n - r + i) / i stays integral: it equals C(n-r+i, i).
    acc = acc * static_cast<unsigned __int128>(n - r + i) / static_cast<unsigned __int128>(i);
    if (acc > static_cast<unsigned __int128>(UINT64_MAX))
      throw OverflowError("C(" + std::to_string(n) + "," + std::to_string(r) +
                          ") overflows 64 bits");
  }
  return static_cast<Count>(acc);
}

// M_{h,k} = |X_{h,k}| = C(h+k-1, k-1). M_{0,k} = 1 (the empty composition).
inline Count multiset_count(int h, int k) {
  if (h < 0 || k < 1)
    throw InvalidArgument("multiset_count needs h >= 0 and k >= 1, got h=" + std::to_string(h) +
                          " k=" + std::to_string(k));
  return binomial(std::int64_t{h} + k - 1, k - 1);
}

// C(l+2, 3): the forced deficit of |(h+l)A| for A that first collides at h+1.
inline Count tetrahedral(int l) {
  if (l < 0) throw InvalidArgument("tetrahedral index must be >= 0");
  return binomial(std::int64_t{l} + 2, 3);
}

// Deficit forced at step i past the first collision for |A| = k:
// |(h+i)A| <= M_{h+i,k} - M_{i-1,k}. Independent of h; for k = 4 this is
// tetrahedral(i).
inline Count figurate_gap(int /*h*/, int i, int k) {
  if (i < 1 || k < 2) throw InvalidArgument("figurate_gap needs i >= 1 and k >= 2");
  return multiset_count(i - 1, k);
}

// M_{h+i,k} - M_{i-1,k}, the predicted frequent size at step i.
inline Count predicted_frequent_size(int h, int i, int k) {
  return multiset_count(h + i, k) - figurate_gap(h, i, k);
}

class SumVector {
 public:
  SumVector() = default;
  explicit SumVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      if (e < 0) throw InvalidArgument("sum vector entries must be nonnegative");
  }

  std::span<const int> entries() const noexcept { return entries_; }
  std::size_t arity() const noexcept { return entries_.size(); }
  int degree() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  int operator[](std::size_t i) const { return entries_[i]; }

  // Bit i set iff entry i (0-based) is positive.
  std::uint64_t support_mask() const noexcept {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i] > 0) m |= std::uint64_t{1} << i;
    return m;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const SumVector&, const SumVector&) = default;
  friend bool operator==(const SumVector&, const SumVector&) = default;

 private:
  std::vector<int> entries_;
};

// 1-based indices of the positive entries: support((2,0,0,1)) = {1,4}.
inline std::vector<int> support(const SumVector& x) {
  std::vector<int> out;
  for (std::size_t i = 0; i < x.arity(); ++i)
    if (x[i] > 0) out.push_back(static_cast<int>(i) + 1);
  return out;
}

inline bool disjoint_support(const SumVector& x, const SumVector& y) {
  return (x.support_mask() & y.support_mask()) == 0;
}

inline std::int64_t dot(const SumVector& x, const SumVector& y) {
  if (x.arity() != y.arity()) throw InvalidArgument("dot: arity mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.arity(); ++i) s += std::int64_t{x[i]} * y[i];
  return s;
}

inline std::int64_t dot(const SumVector& x, std::span<const std::int64_t> elements) {
  if (x.arity() != elements.size()) throw InvalidArgument("dot: arity mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.arity(); ++i) s += x[i] * elements[i];
  return s;
}

// Visits every element of X_{h,k} once, in lexicographic order of entries.
// The callback receives a span that is only valid for the duration of the call.
template <typename F>
void for_each_composition(int h, int k, F&& visit) {
  if (h < 0 || k < 1) throw InvalidArgument("compositions need h >= 0 and k >= 1");
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  // Odometer: positions 0..k-2 are free, the last takes the remainder.
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == cur.size()) {
      cur[pos] = remaining;
      visit(std::span<const int>(cur));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  recurse(recurse, 0, h);
}

inline std::vector<SumVector> enumerate_compositions(int h, int k,
                                                     const Budget& budget = Budget::defaults()) {
  const Count m = multiset_count(h, k);
  require_budget("enumerate_compositions", m, budget.max_compositions);
  std::vector<SumVector> out;
  out.reserve(m);
  for_each_composition(h, k, [&](std::span<const int> e) {
    out.emplace_back(std::vector<int>(e.begin(), e.end()));
  });
  return out;
}

// Census of unordered pairs {x, y} of distinct vectors of X_{h,k} with
// disjoint support. "Nontrivial" drops the C(k,2) pairs in which both
// vectors are multiples of a basis vector.
struct PairCensus {
  int h = 0;
  int k = 0;
  Count total_disjoint_pairs = 0;
  Count nontrivial_pairs = 0;
};

template <typename F>
void for_each_disjoint_pair(const std::vector<SumVector>& xs, F&& visit) {
  std::vector<std::uint64_t> masks;
  masks.reserve(xs.size());
  for (const auto& x : xs) masks.push_back(x.support_mask());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if ((masks[i] & masks[j]) == 0) visit(xs[i], xs[j]);
}

inline PairCensus disjoint_support_pairs(int h, int k, const Budget& budget = Budget::defaults()) {
  if (h < 1) throw PreconditionError("disjoint_support_pairs needs h >= 1");
  if (k < 1 || k > 64) throw InvalidArgument("disjoint_support_pairs needs 1 <= k <= 64");
  const Count m = multiset_count(h, k);
  const Count pairs = m > UINT32_MAX ? UINT64_MAX : m * (m - 1) / 2;
  require_budget("disjoint_support_pairs", pairs, budget.max_pairs);
  const auto xs = enumerate_compositions(h, k, budget);
  PairCensus c{h, k, 0, 0};
  for_each_disjoint_pair(xs, [&](const SumVector& x, const SumVector& y) {
    ++c.total_disjoint_pairs;
    const bool both_single = std::popcount(x.support_mask()) == 1 &&
                             std::popcount(y.support_mask()) == 1;
    if (!both_single) ++c.nontrivial_pairs;
  });
  return c;
}

}  // namespace sumset
