#pragma once

// Iterated sumsets hA of a finite integer set.
//
// Two independent routes:
//   profile_naive  enumerates X_{h,k} and tallies every dot product x.A in an
//                  ordered map. Exact representation counts; the oracle.
//   profile_fast   iterated Minkowski addition on a dense bitmap. Sizes only.
// Everything that needs r_{A,h}(n) goes through the naive route.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumset/budget.hpp"
#include "sumset/combinatorics.hpp"
#include "sumset/error.hpp"
#include "sumset/set_vector.hpp"

namespace sumset {

// One total n with r_{A,h}(n) >= 2, and its representations in lex order.
struct Collision {
  Value total = 0;
  std::vector<SumVector> representations;
};

struct SumsetProfile {
  int h = 0;
  Count size = 0;
  Count deficit = 0;      // M_{h,k} - |hA|
  Count max_reps = 0;     // max_n r_{A,h}(n)
  std::vector<Collision> collisions;  // ascending by total
  std::vector<Value> sums;            // hA, ascending
};

// Exact profile from a precomputed X_{h,k}. All vectors must share the
// arity of `elements`.
inline SumsetProfile profile_naive(std::span<const Value> elements,
                                   const std::vector<SumVector>& compositions) {
  std::map<Value, std::vector<const SumVector*>> by_total;
  int h = 0;
  for (const auto& x : compositions) {
    by_total[dot(x, elements)].push_back(&x);
    h = x.degree();
  }
  SumsetProfile p;
  p.h = h;
  p.size = by_total.size();
  p.deficit = compositions.size() - p.size;
  p.sums.reserve(by_total.size());
  for (const auto& [n, reps] : by_total) {
    p.sums.push_back(n);
    p.max_reps = std::max<Count>(p.max_reps, reps.size());
    if (reps.size() < 2) continue;
    Collision c{n, {}};
    for (const SumVector* x : reps) c.representations.push_back(*x);
    p.collisions.push_back(std::move(c));
  }
  return p;
}

inline SumsetProfile profile_naive(std::span<const Value> elements, int h,
                                   const Budget& budget = Budget::defaults()) {
  if (h < 1) throw InvalidArgument("profile_naive needs h >= 1");
  if (elements.empty()) throw InvalidArgument("profile_naive needs a nonempty set");
  auto xs = enumerate_compositions(h, static_cast<int>(elements.size()), budget);
  auto p = profile_naive(elements, xs);
  p.h = h;
  return p;
}

inline SumsetProfile profile_naive(const SetVector& a, int h,
                                   const Budget& budget = Budget::defaults()) {
  return profile_naive(a.elements(), h, budget);
}

// Reusable scratch for the bitmap kernel. Not thread-safe; give each worker
// its own instance.
class FoldKernel {
 public:
  // Returns |iA| for i = 1..h (index i-1). The span is valid until the next
  // call. Bit j of fold i stands for the sum i*min(A) + j.
  std::span<const Count> sizes(std::span<const Value> elements, int h,
                               const Budget& budget = Budget::defaults()) {
    if (h < 1) throw InvalidArgument("fold sizes need h >= 1");
    if (elements.empty()) throw InvalidArgument("fold sizes need a nonempty set");
    Value lo = elements[0], hi = elements[0];
    for (Value e : elements) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    const std::uint64_t spread = static_cast<std::uint64_t>(hi - lo);
    const std::uint64_t cells = checked_add(checked_mul(spread, std::uint64_t(h)), 1);
    require_budget("fold bitmap cells", cells, budget.max_cells);

    const std::size_t words = static_cast<std::size_t>(cells / 64 + 2);
    cur_.assign(words, 0);
    next_.assign(words, 0);
    offsets_.clear();
    for (Value e : elements) offsets_.push_back(static_cast<std::uint64_t>(e - lo));

    sizes_.assign(static_cast<std::size_t>(h), 0);
    cur_[0] = 1;  // fold 0 = {0}
    std::size_t used = 1;
    for (int i = 1; i <= h; ++i) {
      const std::size_t next_used =
          static_cast<std::size_t>((spread * static_cast<std::uint64_t>(i)) / 64 + 1);
      std::fill(next_.begin(), next_.begin() + static_cast<std::ptrdiff_t>(next_used + 1), 0);
      for (std::uint64_t off : offsets_) shift_or(next_, cur_, used, off);
      cur_.swap(next_);
      used = next_used;
      Count pop = 0;
      for (std::size_t w = 0; w < used; ++w) pop += std::popcount(cur_[w]);
      sizes_[static_cast<std::size_t>(i - 1)] = pop;
    }
    return sizes_;
  }

 private:
  static void shift_or(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                       std::size_t src_words, std::uint64_t shift) {
    const std::size_t ws = static_cast<std::size_t>(shift / 64);
    const unsigned bs = static_cast<unsigned>(shift % 64);
    if (bs == 0) {
      for (std::size_t i = 0; i < src_words; ++i) dst[i + ws] |= src[i];
      return;
    }
    for (std::size_t i = 0; i < src_words; ++i) {
      dst[i + ws] |= src[i] << bs;
      dst[i + ws + 1] |= src[i] >> (64 - bs);
    }
  }

  std::vector<std::uint64_t> cur_, next_, offsets_;
  std::vector<Count> sizes_;
};

struct FastProfile {
  int h = 0;
  Count size = 0;
  Count deficit = 0;
  std::vector<Count> sizes;  // |iA| for i = 1..h
};

inline FastProfile profile_fast(std::span<const Value> elements, int h,
                                const Budget& budget = Budget::defaults()) {
  FoldKernel kernel;
  auto s = kernel.sizes(elements, h, budget);
  FastProfile p;
  p.h = h;
  p.sizes.assign(s.begin(), s.end());
  p.size = p.sizes.back();
  p.deficit = multiset_count(h, static_cast<int>(elements.size())) - p.size;
  return p;
}

inline FastProfile profile_fast(const SetVector& a, int h,
                                const Budget& budget = Budget::defaults()) {
  return profile_fast(a.elements(), h, budget);
}

struct BhClassification {
  int h_star = 1;   // largest h <= cap with A a B_h-set
  bool capped = false;
  std::optional<Collision> first_collision;  // smallest colliding total at h_star + 1
};

// Order from fold sizes |1A|..|cap A|. Throws InvariantViolation if a deficit
// appears and then vanishes at a larger fold.
inline BhClassification classify_sizes(std::span<const Count> sizes, int k) {
  if (sizes.empty()) throw InvalidArgument("classify needs at least one fold size");
  BhClassification c;
  const int cap = static_cast<int>(sizes.size());
  int first_deficit = 0;
  for (int i = 1; i <= cap; ++i) {
    const bool full = sizes[static_cast<std::size_t>(i - 1)] == multiset_count(i, k);
    if (!full && first_deficit == 0) first_deficit = i;
    if (full && first_deficit != 0)
      throw InvariantViolation("deficit at fold " + std::to_string(first_deficit) +
                               " vanished at fold " + std::to_string(i));
  }
  if (first_deficit == 0) {
    c.h_star = cap;
    c.capped = true;
  } else {
    c.h_star = first_deficit - 1;
  }
  return c;
}

inline BhClassification classify(std::span<const Value> elements, int h_cap,
                                 const Budget& budget = Budget::defaults()) {
  if (h_cap < 1) throw InvalidArgument("classify needs H_cap >= 1");
  FoldKernel kernel;
  auto c = classify_sizes(kernel.sizes(elements, h_cap, budget),
                          static_cast<int>(elements.size()));
  if (!c.capped) {
    auto p = profile_naive(elements, c.h_star + 1, budget);
    if (p.collisions.empty())
      throw InvariantViolation("fold sizes report a collision the naive profile does not see");
    c.first_collision = std::move(p.collisions.front());
  }
  return c;
}

inline BhClassification classify(const SetVector& a, int h_cap = 8,
                                 const Budget& budget = Budget::defaults()) {
  return classify(a.elements(), h_cap, budget);
}

struct GapBoundEntry {
  int l = 0;
  Count deficit = 0;   // M_{h*+l,4} - |(h*+l)A|
  Count bound = 0;     // C(l+2,3)
  bool satisfied = false;
  bool equality = false;
};

// Deficits past the first collision of a 4-set in B*_{h_star}, against the
// forced tetrahedral lower bound, for l = 1..max_step.
inline std::vector<GapBoundEntry> gap_bound_check(const SetVector& a, int h_star, int max_step,
                                                  const Budget& budget = Budget::defaults()) {
  if (a.k() != 4) throw PreconditionError("gap_bound_check is defined for 4-element sets");
  if (h_star < 1 || max_step < 1) throw PreconditionError("gap_bound_check needs h_star, L >= 1");
  FoldKernel kernel;
  auto sizes = kernel.sizes(a.elements(), h_star + max_step, budget);
  auto c = classify_sizes(sizes.first(static_cast<std::size_t>(h_star + 1)), 4);
  if (c.capped || c.h_star != h_star)
    throw PreconditionError(a.to_string() + " is not in B*_" + std::to_string(h_star) +
                            " (its order is " + std::to_string(c.h_star) +
                            (c.capped ? "+" : "") + ")");
  std::vector<GapBoundEntry> out;
  for (int l = 1; l <= max_step; ++l) {
    const int fold = h_star + l;
    GapBoundEntry e;
    e.l = l;
    e.deficit = multiset_count(fold, 4) - sizes[static_cast<std::size_t>(fold - 1)];
    e.bound = tetrahedral(l);
    e.satisfied = e.deficit >= e.bound;
    e.equality = e.deficit == e.bound;
    out.push_back(e);
  }
  return out;
}

}  // namespace sumset
