#pragma once

// Exhaustive census of |hA| over all k-subsets A of [1..q].

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumset/budget.hpp"
#include "sumset/combinatorics.hpp"
#include "sumset/engine.hpp"
#include "sumset/error.hpp"
#include "sumset/subsets.hpp"

namespace sumset {

// size -> number of subsets with |hA| == size. Merging is pointwise addition.
struct SizeHistogram {
  int h = 0;
  std::map<Count, Count> counts;

  void add(Count size, Count n = 1) { counts[size] += n; }

  Count at(Count size) const {
    auto it = counts.find(size);
    return it == counts.end() ? 0 : it->second;
  }

  Count total() const {
    Count t = 0;
    for (const auto& [size, n] : counts) t = checked_add(t, n);
    return t;
  }

  SizeHistogram& merge(const SizeHistogram& other) {
    if (other.h != h) throw InvariantViolation("merging histograms of different folds");
    for (const auto& [size, n] : other.counts) counts[size] = checked_add(counts[size], n);
    return *this;
  }

  friend bool operator==(const SizeHistogram&, const SizeHistogram&) = default;
};

struct GapReport {
  int h = 0;
  std::vector<Count> ladder;            // M_{h,4} - C(l+2,3), l = 0..h-1
  std::vector<Count> observed;          // histogram count at each rung
  std::vector<Count> max_between;       // max count strictly between rung j and j+1
  std::vector<Count> max_adjacent;      // max over the one or two bands touching rung j
  std::vector<bool> confirmed;          // observed[j] > max_adjacent[j]
  std::vector<bool> strongly_confirmed; // ... and ratio >= threshold
  std::vector<std::optional<double>> ratios;  // observed / max_adjacent; nullopt = infinite
  std::vector<Count> gap_differences;   // ladder[j] - ladder[j+1]
  double threshold = 10.0;

  bool inconclusive() const {
    return std::find(confirmed.begin(), confirmed.end(), false) != confirmed.end();
  }
  // Rungs 0..upto all confirmed.
  bool confirmed_through(int upto) const {
    for (int j = 0; j <= upto && j < static_cast<int>(confirmed.size()); ++j)
      if (!confirmed[static_cast<std::size_t>(j)]) return false;
    return upto < static_cast<int>(confirmed.size());
  }
};

// Ladder of predicted frequent sizes for 4-sets at fold h and the strict
// local-dominance test around each rung.
inline GapReport detect_gaps(const SizeHistogram& hist, int h, double threshold = 10.0) {
  if (h < 1) throw InvalidArgument("detect_gaps needs h >= 1");
  GapReport g;
  g.h = h;
  g.threshold = threshold;
  const Count top = multiset_count(h, 4);
  for (int l = 0; l < h; ++l) g.ladder.push_back(top - tetrahedral(l));
  for (Count size : g.ladder) g.observed.push_back(hist.at(size));
  for (std::size_t j = 0; j + 1 < g.ladder.size(); ++j) {
    Count m = 0;
    for (Count s = g.ladder[j + 1] + 1; s < g.ladder[j]; ++s) m = std::max(m, hist.at(s));
    g.max_between.push_back(m);
    g.gap_differences.push_back(g.ladder[j] - g.ladder[j + 1]);
  }
  for (std::size_t j = 0; j < g.ladder.size(); ++j) {
    Count adj = 0;
    if (j > 0) adj = std::max(adj, g.max_between[j - 1]);
    if (j + 1 < g.ladder.size()) adj = std::max(adj, g.max_between[j]);
    g.max_adjacent.push_back(adj);
    const bool ok = g.observed[j] > adj;
    std::optional<double> ratio;
    if (adj > 0) ratio = static_cast<double>(g.observed[j]) / static_cast<double>(adj);
    g.confirmed.push_back(ok);
    g.strongly_confirmed.push_back(ok && (!ratio || *ratio >= threshold));
    g.ratios.push_back(ratio);
  }
  return g;
}

struct CensusReport {
  int q = 0;
  int k = 0;
  int h_cap = 0;
  std::vector<SizeHistogram> histograms;  // index h-1
  std::map<int, Count> bstar_counts;        // h -> |B*_{h,k}(q)|, h < h_cap
  std::map<int, Count> exceptional_counts;  // h -> |{A in B*_h : deficit(h+1) >= 2}|
  Count capped = 0;                         // no collision up to h_cap
  std::map<int, GapReport> gaps;            // k == 4, h >= 2

  const SizeHistogram& histogram(int h) const {
    return histograms.at(static_cast<std::size_t>(h - 1));
  }
};

struct CensusOptions {
  int shards = 1;
  int threads = 1;
  double gap_threshold = 10.0;
  Budget budget = Budget::defaults();
};

namespace detail {

struct CensusShard {
  FoldKernel kernel;
  std::vector<SizeHistogram> hist;
  std::vector<Count> bstar;        // index h
  std::vector<Count> exceptional;  // index h
  Count capped = 0;
};

}  // namespace detail

inline CensusReport run_census(int q, int k, int h_cap, const CensusOptions& opt = {}) {
  if (k < 2) throw InvalidArgument("census needs k >= 2");
  if (q < k) throw InvalidArgument("census needs q >= k");
  if (h_cap < 1) throw InvalidArgument("census needs H_cap >= 1");
  const Count subsets = binomial(q, k);
  require_budget("census subsets C(q,k)", subsets, opt.budget.max_subsets);
  // Fold bitmap is at most h_cap * q bits.
  require_budget("fold bitmap cells", checked_mul(Count(h_cap), Count(q)), opt.budget.max_cells);

  detail::CensusShard init;
  for (int h = 1; h <= h_cap; ++h) init.hist.push_back(SizeHistogram{h, {}});
  init.bstar.assign(static_cast<std::size_t>(h_cap + 1), 0);
  init.exceptional.assign(static_cast<std::size_t>(h_cap + 1), 0);

  std::vector<Count> full(static_cast<std::size_t>(h_cap + 1));
  for (int h = 1; h <= h_cap; ++h) full[static_cast<std::size_t>(h)] = multiset_count(h, k);

  auto shards = sweep_shards(
      q, k, opt.shards, opt.threads, init, [&](detail::CensusShard& st, std::span<const Value> a) {
        auto sizes = st.kernel.sizes(a, h_cap, opt.budget);
        for (int h = 1; h <= h_cap; ++h)
          st.hist[static_cast<std::size_t>(h - 1)].add(sizes[static_cast<std::size_t>(h - 1)]);
        auto c = classify_sizes(sizes, k);
        if (c.capped) {
          ++st.capped;
          return;
        }
        const auto hs = static_cast<std::size_t>(c.h_star);
        ++st.bstar[hs];
        if (full[hs + 1] - sizes[hs] >= 2) ++st.exceptional[hs];
      });

  CensusReport r;
  r.q = q;
  r.k = k;
  r.h_cap = h_cap;
  r.histograms = init.hist;
  std::vector<Count> bstar(static_cast<std::size_t>(h_cap + 1), 0);
  std::vector<Count> exceptional(bstar);
  for (const auto& st : shards) {
    for (int h = 1; h <= h_cap; ++h)
      r.histograms[static_cast<std::size_t>(h - 1)].merge(st.hist[static_cast<std::size_t>(h - 1)]);
    for (std::size_t h = 0; h < bstar.size(); ++h) {
      bstar[h] = checked_add(bstar[h], st.bstar[h]);
      exceptional[h] = checked_add(exceptional[h], st.exceptional[h]);
    }
    r.capped = checked_add(r.capped, st.capped);
  }

  Count classified = r.capped;
  for (int h = 1; h < h_cap; ++h) {
    r.bstar_counts[h] = bstar[static_cast<std::size_t>(h)];
    r.exceptional_counts[h] = exceptional[static_cast<std::size_t>(h)];
    classified += bstar[static_cast<std::size_t>(h)];
  }
  if (classified != subsets)
    throw InvariantViolation("shard merge: classified " + std::to_string(classified) +
                             " of " + std::to_string(subsets) + " subsets");
  for (const auto& hist : r.histograms) {
    if (hist.total() != subsets)
      throw InvariantViolation("shard merge: histogram h=" + std::to_string(hist.h) +
                               " totals " + std::to_string(hist.total()));
    if (!hist.counts.empty() && hist.counts.rbegin()->first > multiset_count(hist.h, k))
      throw InvariantViolation("histogram h=" + std::to_string(hist.h) + " exceeds M_{h,k}");
  }

  if (k == 4)
    for (int h = 2; h <= h_cap; ++h) r.gaps[h] = detect_gaps(r.histogram(h), h, opt.gap_threshold);
  return r;
}

// T_{x,y}: number of A in C([q],k) with x.A == y.A. With restrict_bstar only
// sets in B*_{deg-1,k}(q) are counted.
inline Count count_pair_solutions(const SumVector& x, const SumVector& y, int q,
                                  bool restrict_bstar, const Budget& budget = Budget::defaults()) {
  const int k = static_cast<int>(x.arity());
  if (k < 2 || y.arity() != x.arity()) throw PreconditionError("x and y need equal arity >= 2");
  if (x == y) throw PreconditionError("x and y must be distinct");
  const int deg = x.degree();
  if (y.degree() != deg) throw PreconditionError("x and y must have the same degree");
  if (deg < 1) throw PreconditionError("x and y need degree >= 1");
  if (restrict_bstar && !disjoint_support(x, y))
    throw PreconditionError("restricted pair counts need disjoint supports");
  require_budget("pair solutions C(q,k)", binomial(q, k), budget.max_subsets);

  FoldKernel kernel;
  Count n = 0;
  for_each_subset(q, k, [&](std::span<const Value> a) {
    if (dot(x, a) != dot(y, a)) return;
    if (restrict_bstar) {
      auto c = classify_sizes(kernel.sizes(a, deg, budget), k);
      if (c.capped || c.h_star != deg - 1) return;
    }
    ++n;
  });
  return n;
}

}  // namespace sumset
