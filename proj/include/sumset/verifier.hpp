#pragma once

// Finite re-checks of the structural facts about sets in B*_{h,k}(q):
//
//   ortho       colliding sum vectors at fold h+1 have disjoint supports
//   repno       r_{A,h+1}(n) <= floor((k+1)/2), and some n has r >= 2
//   gap         deficit(h+l) >= M_{l-1,k} (= C(l+2,3) for k = 4)
//   ddp         [5h .. hq] is contained in S_{h+1,4}(q), max <= 4(h+1)q
//   paircount   |P_{h,4}| = 5h^2 + 1, |P'_{h,4}| = 5h^2 - 5
//   exceptional |{A in B*_h : deficit(h+1) >= 2}| < |B*_h|
//
// Each check yields a LemmaVerdict; a verdict passes iff it recorded no
// violations.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sumset/budget.hpp"
#include "sumset/combinatorics.hpp"
#include "sumset/engine.hpp"
#include "sumset/error.hpp"
#include "sumset/subsets.hpp"

namespace sumset {

struct LemmaVerdict {
  std::string lemma;
  Value q = 0;
  int h = 0;  // order checked; 0 when the sweep covers every order below the cap
  int k = 4;
  Count instances = 0;
  Count violation_count = 0;
  std::vector<std::string> violations;  // first kMaxKept messages
  double elapsed_ms = 0.0;

  static constexpr std::size_t kMaxKept = 32;

  LemmaVerdict() = default;
  LemmaVerdict(std::string name, Value q_, int h_, int k_)
      : lemma(std::move(name)), q(q_), h(h_), k(k_) {}

  bool pass() const { return violation_count == 0; }

  void violate(std::string msg) {
    ++violation_count;
    if (violations.size() < kMaxKept) violations.push_back(std::move(msg));
  }

  LemmaVerdict& absorb(const LemmaVerdict& other) {
    instances += other.instances;
    violation_count += other.violation_count;
    for (const auto& m : other.violations)
      if (violations.size() < kMaxKept) violations.push_back(m);
    return *this;
  }
};

namespace detail {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string set_string(std::span<const Value> a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a[i]);
  }
  return s + "}";
}

}  // namespace detail

struct SweepOptions {
  int shards = 1;
  int threads = 1;
  std::optional<int> only_h;  // restrict the per-set checks to h_star == only_h
  Budget budget = Budget::defaults();
};

// Result of one exhaustive pass over C([q],k) with fold cap h_cap.
struct LemmaSweep {
  LemmaVerdict ortho;
  LemmaVerdict repno;
  LemmaVerdict gap;
  std::vector<Count> bstar;        // index h, h < h_cap
  std::vector<Count> exceptional;  // index h
  Count capped = 0;
};

namespace detail {

struct SweepShard {
  FoldKernel kernel;
  LemmaVerdict ortho, repno, gap;
  std::vector<Count> bstar, exceptional;
  Count capped = 0;
};

// Checks one set already known to be in B*_{h,k}: fold sizes up to h_cap and
// X_{h+1,k} for the exact representation counts.
inline void check_bstar_set(SweepShard& st, std::span<const Value> a, int h, int k, int h_cap,
                            std::span<const Count> sizes, const std::vector<SumVector>& next_fold) {
  const auto prof = profile_naive(a, next_fold);

  ++st.ortho.instances;
  for (const auto& col : prof.collisions) {
    const auto& reps = col.representations;
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        if (!disjoint_support(reps[i], reps[j]) || dot(reps[i], reps[j]) != 0)
          st.ortho.violate(set_string(a) + ": " + reps[i].to_string() + " and " +
                           reps[j].to_string() + " share support at total " +
                           std::to_string(col.total));
  }

  ++st.repno.instances;
  const Count bound = static_cast<Count>((k + 1) / 2);
  if (prof.max_reps > bound)
    st.repno.violate(set_string(a) + ": r_{A," + std::to_string(h + 1) + "} reaches " +
                     std::to_string(prof.max_reps) + " > " + std::to_string(bound));
  if (prof.max_reps < 2)
    st.repno.violate(set_string(a) + ": no repeated total at fold " + std::to_string(h + 1));

  for (int l = 1; h + l <= h_cap; ++l) {
    ++st.gap.instances;
    const int fold = h + l;
    const Count deficit = multiset_count(fold, k) - sizes[static_cast<std::size_t>(fold - 1)];
    const Count need = figurate_gap(h, l, k);
    if (deficit < need)
      st.gap.violate(set_string(a) + ": deficit " + std::to_string(deficit) + " at fold " +
                     std::to_string(fold) + " below " + std::to_string(need));
  }
}

}  // namespace detail

inline LemmaSweep lemma_sweep(int q, int k, int h_cap, const SweepOptions& opt = {}) {
  if (k < 2 || q < k) throw InvalidArgument("lemma sweep needs 2 <= k <= q");
  if (h_cap < 2) throw InvalidArgument("lemma sweep needs H_cap >= 2");
  require_budget("lemma sweep subsets C(q,k)", binomial(q, k), opt.budget.max_subsets);
  detail::Stopwatch clock;

  std::vector<std::vector<SumVector>> tables(static_cast<std::size_t>(h_cap + 1));
  for (int h = 1; h <= h_cap; ++h)
    tables[static_cast<std::size_t>(h)] = enumerate_compositions(h, k, opt.budget);

  detail::SweepShard init;
  init.bstar.assign(static_cast<std::size_t>(h_cap + 1), 0);
  init.exceptional = init.bstar;

  auto shards = sweep_shards(
      q, k, opt.shards, opt.threads, init, [&](detail::SweepShard& st, std::span<const Value> a) {
        auto sizes = st.kernel.sizes(a, h_cap, opt.budget);
        auto c = classify_sizes(sizes, k);
        if (c.capped) {
          ++st.capped;
          return;
        }
        const int h = c.h_star;
        ++st.bstar[static_cast<std::size_t>(h)];
        if (multiset_count(h + 1, k) - sizes[static_cast<std::size_t>(h)] >= 2)
          ++st.exceptional[static_cast<std::size_t>(h)];
        if (opt.only_h && *opt.only_h != h) return;
        detail::check_bstar_set(st, a, h, k, h_cap, sizes, tables[static_cast<std::size_t>(h + 1)]);
      });

  LemmaSweep out;
  const int h_tag = opt.only_h.value_or(0);
  out.ortho = LemmaVerdict{"ortho", q, h_tag, k};
  out.repno = LemmaVerdict{"repno", q, h_tag, k};
  out.gap = LemmaVerdict{"gap", q, h_tag, k};
  out.bstar.assign(static_cast<std::size_t>(h_cap), 0);
  out.exceptional = out.bstar;
  for (const auto& st : shards) {
    out.ortho.absorb(st.ortho);
    out.repno.absorb(st.repno);
    out.gap.absorb(st.gap);
    for (std::size_t h = 1; h < static_cast<std::size_t>(h_cap); ++h) {
      out.bstar[h] += st.bstar[h];
      out.exceptional[h] += st.exceptional[h];
    }
    out.capped += st.capped;
  }
  const double ms = clock.elapsed_ms();
  out.ortho.elapsed_ms = out.repno.elapsed_ms = out.gap.elapsed_ms = ms;
  return out;
}

// Ortho over all 4-sets of B*_h in [1..q]; with sample > 0 and more subsets
// than that, a seeded uniform sample of subsets is examined instead.
inline LemmaVerdict verify_ortho(int q, int h, Count sample = 0, std::uint64_t seed = 1,
                                 const Budget& budget = Budget::defaults()) {
  if (h < 1) throw PreconditionError("verify_ortho needs h >= 1");
  const Count total = binomial(q, 4);
  if (sample == 0 || total <= sample) {
    SweepOptions opt;
    opt.only_h = h;
    opt.budget = budget;
    return lemma_sweep(q, 4, h + 1, opt).ortho;
  }
  detail::Stopwatch clock;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Count> draw(0, total - 1);
  const auto next_fold = enumerate_compositions(h + 1, 4, budget);
  detail::SweepShard st;
  for (Count i = 0; i < sample; ++i) {
    const auto a = colex_unrank(draw(rng), 4);
    auto sizes = st.kernel.sizes(a, h + 1, budget);
    auto c = classify_sizes(sizes, 4);
    if (c.capped || c.h_star != h) continue;
    detail::check_bstar_set(st, a, h, 4, h + 1, sizes, next_fold);
  }
  st.ortho.lemma = "ortho";
  st.ortho.q = q;
  st.ortho.h = h;
  st.ortho.elapsed_ms = clock.elapsed_ms();
  return st.ortho;
}

inline LemmaVerdict verify_repno(int q, int k, int h, const Budget& budget = Budget::defaults()) {
  if (k < 2) throw PreconditionError("verify_repno needs k >= 2");
  if (h < 1) throw PreconditionError("verify_repno needs h >= 1");
  SweepOptions opt;
  opt.only_h = h;
  opt.budget = budget;
  return lemma_sweep(q, k, h + 1, opt).repno;
}

// Forced-deficit sweep over every order below the cap.
inline LemmaVerdict verify_gap(int q, int h_cap, const SweepOptions& opt = {}) {
  return lemma_sweep(q, 4, h_cap, opt).gap;
}

inline LemmaVerdict verify_exceptional(int q, int h, const Budget& budget = Budget::defaults()) {
  detail::Stopwatch clock;
  SweepOptions opt;
  opt.only_h = h;
  opt.budget = budget;
  const auto sweep = lemma_sweep(q, 4, h + 1, opt);
  LemmaVerdict v{"exceptional", q, h, 4};
  const Count bstar = sweep.bstar[static_cast<std::size_t>(h)];
  const Count exc = sweep.exceptional[static_cast<std::size_t>(h)];
  v.instances = bstar;
  if (bstar > 0 && exc >= bstar)
    v.violate(std::to_string(exc) + " exceptional sets out of " + std::to_string(bstar) +
              " in B*_" + std::to_string(h));
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

// A set and (h+1)-fold sum vector realizing one dot product s.
struct DdpWitness {
  Value quotient = 0;   // a in s = a*h + b
  Value remainder = 0;  // b
  std::vector<Value> tuple;  // (a, b, c, d) or (a, c, d, e) in construction order
  SumVector z;               // (h,1,0,0) or (h+1,0,0,0), aligned with tuple
  std::vector<Value> sorted; // the same set, increasing
  SumVector z_sorted;        // z permuted to match `sorted`
};

// Division-algorithm construction: s = a*h + b with a in [1..q], b in [0..q],
// then z = (h,1,0,0) on (a,b,c,d), or z = (h+1,0,0,0) on (a,c,d,e) when
// a == b. A zero remainder is rewritten as s = (a-1)h + h. Fillers are the
// smallest unused integers. nullopt if no valid set in [1..q] results.
inline std::optional<DdpWitness> ddp_recipe(Value s, int h, Value q) {
  if (h < 1 || q < 4) return std::nullopt;
  DdpWitness w;
  w.quotient = s / h;
  w.remainder = s % h;
  if (w.remainder == 0) {
    w.quotient -= 1;
    w.remainder = h;
  }
  const Value a = w.quotient, b = w.remainder;
  if (a < 1 || a > q || b < 1 || b > q) return std::nullopt;
  std::vector<Value> used = {a};
  if (a != b) used.push_back(b);
  w.tuple = used;
  for (Value f = 1; w.tuple.size() < 4 && f <= q; ++f)
    if (std::find(used.begin(), used.end(), f) == used.end()) w.tuple.push_back(f);
  if (w.tuple.size() < 4) return std::nullopt;
  w.z = a == b ? SumVector({h + 1, 0, 0, 0}) : SumVector({h, 1, 0, 0});

  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return w.tuple[i] < w.tuple[j]; });
  std::vector<int> zs;
  for (std::size_t i : order) {
    w.sorted.push_back(w.tuple[i]);
    zs.push_back(w.z[i]);
  }
  w.z_sorted = SumVector(std::move(zs));
  return w;
}

struct DotProductRange {
  int h = 0;
  Value q = 0;
  Value claimed_lo = 0;  // 5h
  Value claimed_hi = 0;  // hq
  bool enumerated = false;
  Value min_achievable = 0;
  Value max_achievable = 0;
  Count achievable_count = 0;  // |S_{h+1,4}(q)|
};

struct DdpResult {
  LemmaVerdict verdict;
  DotProductRange range;
};

inline DdpResult verify_ddp(int q, int h, const Budget& budget = Budget::defaults()) {
  if (q < 7) throw PreconditionError("verify_ddp needs q >= 7");
  if (h < 1) throw PreconditionError("verify_ddp needs h >= 1");
  detail::Stopwatch clock;
  DdpResult r;
  r.verdict = LemmaVerdict{"ddp", q, h, 4};
  r.range.h = h;
  r.range.q = q;
  r.range.claimed_lo = 5 * Value{h};
  r.range.claimed_hi = Value{h} * q;

  for (Value s = r.range.claimed_lo; s <= r.range.claimed_hi; ++s) {
    ++r.verdict.instances;
    const auto w = ddp_recipe(s, h, q);
    if (!w) {
      r.verdict.violate("recipe: no construction for s=" + std::to_string(s));
      continue;
    }
    const bool distinct = std::adjacent_find(w->sorted.begin(), w->sorted.end()) == w->sorted.end();
    const bool in_range = w->sorted.front() >= 1 && w->sorted.back() <= q;
    if (!distinct || !in_range || w->z.degree() != h + 1 || dot(w->z_sorted, w->sorted) != s)
      r.verdict.violate("recipe: witness for s=" + std::to_string(s) + " is invalid");
  }

  const Value ceiling = 4 * Value{h + 1} * q;
  const Count work = checked_mul(binomial(q, 4), multiset_count(h + 1, 4));
  if (work <= budget.max_pairs) {
    r.range.enumerated = true;
    const auto xs = enumerate_compositions(h + 1, 4, budget);
    std::vector<bool> hit(static_cast<std::size_t>(ceiling + 1), false);
    Value lo = ceiling + 1, hi = -1;
    for_each_subset(q, 4, [&](std::span<const Value> a) {
      for (const auto& x : xs) {
        const Value s = dot(x, a);
        if (s > ceiling) {
          r.verdict.violate("dot product " + std::to_string(s) + " exceeds 4(h+1)q");
          continue;
        }
        hit[static_cast<std::size_t>(s)] = true;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    });
    r.range.min_achievable = lo;
    r.range.max_achievable = hi;
    r.range.achievable_count =
        static_cast<Count>(std::count(hit.begin(), hit.end(), true));
    for (Value s = r.range.claimed_lo; s <= r.range.claimed_hi; ++s)
      if (!hit[static_cast<std::size_t>(s)])
        r.verdict.violate("enumeration: s=" + std::to_string(s) + " is not attained");
    if (lo != h + 1) r.verdict.violate("minimum attained dot product is " + std::to_string(lo));
    if (hi != Value{h + 1} * q)
      r.verdict.violate("maximum attained dot product is " + std::to_string(hi));
  }
  r.verdict.elapsed_ms = clock.elapsed_ms();
  return r;
}

inline LemmaVerdict verify_paircount(int h_max, const Budget& budget = Budget::defaults()) {
  detail::Stopwatch clock;
  LemmaVerdict v{"paircount", 0, h_max, 4};
  for (int h = 1; h <= h_max; ++h) {
    ++v.instances;
    const auto c = disjoint_support_pairs(h, 4, budget);
    const Count hh = Count(h) * Count(h);
    const Count closed = 5 * hh + 1;
    const Count by_cases = 4 * binomial(h + 2, 2) - 6 + 3 * Count(h - 1) * Count(h - 1);
    if (c.total_disjoint_pairs != closed || by_cases != closed)
      v.violate("h=" + std::to_string(h) + ": |P| = " + std::to_string(c.total_disjoint_pairs) +
                ", 5h^2+1 = " + std::to_string(closed) + ", case count " +
                std::to_string(by_cases));
    if (c.nontrivial_pairs != closed - 6)
      v.violate("h=" + std::to_string(h) + ": |P'| = " + std::to_string(c.nontrivial_pairs) +
                ", expected " + std::to_string(closed - 6));
  }
  v.elapsed_ms = clock.elapsed_ms();
  return v;
}

}  // namespace sumset
