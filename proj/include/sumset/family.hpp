#pragma once

// An explicit family of 4-sets {a,b,c,d} in B*_{h,4}(q) whose only
// (h+1)-fold collision is h*a + c = (h+1)*b:
//
//   a in [1 .. floor(q/(10h)^3)]
//   b in [3ha .. floor(q/(10h)^2)]
//   c = (h+1)b - ha
//   d in [ceil(99q/100) .. q]
//
// For these sets every collision in (h+l)A with l < h is the base collision
// plus a common tail, so |(h+l)A| = M_{h+l,4} - C(l+2,3).

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "sumset/budget.hpp"
#include "sumset/combinatorics.hpp"
#include "sumset/engine.hpp"
#include "sumset/error.hpp"
#include "sumset/set_vector.hpp"

namespace sumset {

struct FamilyParams {
  int h = 2;
  Value q = 0;
  Value a_max = 0;
  Value b_max = 0;
  Value d_min = 0;

  static FamilyParams make(int h, Value q) {
    if (h < 2) throw InvalidArgument("family order h must be >= 2");
    if (q < 1) throw InvalidArgument("family bound q must be >= 1");
    const Value ten_h = 10 * Value{h};
    FamilyParams p;
    p.h = h;
    p.q = q;
    p.a_max = q / (ten_h * ten_h * ten_h);
    p.b_max = q / (ten_h * ten_h);
    p.d_min = (99 * q + 99) / 100;
    return p;
  }

  // Number of b values for a given a.
  Value b_count(Value a) const { return std::max<Value>(0, b_max - 3 * h * a + 1); }
  Value d_count() const { return q - d_min + 1; }
};

// Closed form: sum over a of (b_max - 3ha + 1) for the a with 3ha <= b_max,
// times the number of d values.
inline Count family_size(const FamilyParams& p) {
  const Value a_top = std::min(p.a_max, p.b_max / (3 * p.h));
  if (a_top <= 0 || p.d_count() <= 0) return 0;
  const Count n = static_cast<Count>(a_top);
  const Count tri = checked_mul(n, n + 1) / 2;
  const Count pairs = checked_mul(n, static_cast<Count>(p.b_max + 1)) -
                      checked_mul(static_cast<Count>(3 * p.h), tri);
  return checked_mul(pairs, static_cast<Count>(p.d_count()));
}

// The member at position `index` of the (a, b, d)-lexicographic listing.
inline SetVector family_member(const FamilyParams& p, Count index) {
  const Count nd = static_cast<Count>(p.d_count());
  for (Value a = 1; a <= p.a_max; ++a) {
    const Count block = static_cast<Count>(p.b_count(a)) * nd;
    if (index >= block) {
      index -= block;
      continue;
    }
    const Value b = 3 * p.h * a + static_cast<Value>(index / nd);
    const Value d = p.d_min + static_cast<Value>(index % nd);
    const Value c = (p.h + 1) * b - p.h * a;
    return SetVector::make({a, b, c, d}, p.q);
  }
  throw InvalidArgument("family member index out of range");
}

// All members when the family has at most `limit` of them, otherwise exactly
// `limit` distinct members drawn uniformly with the given seed. Output is in
// listing order either way.
inline std::vector<SetVector> generate_family(const FamilyParams& p, Count limit,
                                              std::uint64_t seed) {
  const Count size = family_size(p);
  std::vector<Count> picks;
  if (size <= limit) {
    picks.resize(size);
    for (Count i = 0; i < size; ++i) picks[i] = i;
  } else {
    // Floyd's sampling: limit distinct indices out of [0, size).
    std::mt19937_64 rng(seed);
    std::unordered_set<Count> chosen;
    for (Count j = size - limit; j < size; ++j) {
      std::uniform_int_distribution<Count> draw(0, j);
      const Count t = draw(rng);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    picks.assign(chosen.begin(), chosen.end());
    std::sort(picks.begin(), picks.end());
  }
  std::vector<SetVector> out;
  out.reserve(picks.size());
  for (Count i : picks) out.push_back(family_member(p, i));
  return out;
}

struct MemberVerification {
  SetVector set = SetVector::make({1, 2});
  int h = 0;
  bool h_star_ok = false;     // A in B*_{h,4}
  bool deficits_ok = false;   // deficit(h+l) == C(l+2,3), l = 1..min(L, h-1)
  bool trivial_only = false;  // every collision differs by +-(h, -(h+1), 1, 0)
  bool separation_ok = false; // (h+1)c < d
  std::vector<std::string> failures;

  bool passed() const { return h_star_ok && deficits_ok && trivial_only && separation_ok; }
};

inline bool is_trivial_collision_pair(const SumVector& x, const SumVector& y, int h) {
  if (x.arity() != 4 || y.arity() != 4) return false;
  const int base[4] = {h, -(h + 1), 1, 0};
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < 4; ++i) {
    const int diff = x[i] - y[i];
    plus = plus && diff == base[i];
    minus = minus && diff == -base[i];
  }
  return plus || minus;
}

inline MemberVerification verify_member(const SetVector& a, int h, int max_step,
                                        const Budget& budget = Budget::defaults()) {
  if (a.k() != 4) throw PreconditionError("family members have 4 elements");
  if (h < 2 || max_step < 1) throw PreconditionError("verify_member needs h >= 2 and L >= 1");
  MemberVerification v;
  v.set = a;
  v.h = h;
  const int steps = std::min(max_step, h - 1);

  FoldKernel kernel;
  auto sizes = kernel.sizes(a.elements(), h + steps, budget);
  auto c = classify_sizes(sizes.first(static_cast<std::size_t>(h + 1)), 4);
  v.h_star_ok = !c.capped && c.h_star == h;
  if (!v.h_star_ok)
    v.failures.push_back("h_star: order is " + std::to_string(c.h_star) +
                         (c.capped ? "+" : "") + ", expected " + std::to_string(h));

  v.deficits_ok = true;
  v.trivial_only = true;
  for (int l = 1; l <= steps; ++l) {
    const int fold = h + l;
    const Count deficit = multiset_count(fold, 4) - sizes[static_cast<std::size_t>(fold - 1)];
    if (deficit != tetrahedral(l)) {
      v.deficits_ok = false;
      v.failures.push_back("deficits: fold " + std::to_string(fold) + " has deficit " +
                           std::to_string(deficit) + ", expected " +
                           std::to_string(tetrahedral(l)));
    }
    const auto prof = profile_naive(a, fold, budget);
    for (const auto& col : prof.collisions) {
      const auto& reps = col.representations;
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
          if (!is_trivial_collision_pair(reps[i], reps[j], h)) {
            v.trivial_only = false;
            v.failures.push_back("trivial_only: " + reps[i].to_string() + " vs " +
                                 reps[j].to_string() + " at " + std::to_string(col.total));
          }
    }
  }
  v.separation_ok = (h + 1) * a[2] < a[3];
  if (!v.separation_ok) v.failures.push_back("separation: (h+1)c >= d");
  return v;
}

}  // namespace sumset
