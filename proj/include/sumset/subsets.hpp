#pragma once

// k-subsets of [1..q] in colex order, and the shard partition used by every
// exhaustive sweep: a subset belongs to shard (max(A) - k) mod shards.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "sumset/combinatorics.hpp"
#include "sumset/error.hpp"
#include "sumset/set_vector.hpp"

namespace sumset {

// Visits every k-subset of [1..q] whose largest element is `top`, in colex
// order of the remaining k-1 elements.
template <typename F>
void for_each_subset_with_max(int top, int k, F&& visit) {
  if (k < 1 || top < k) return;
  std::vector<Value> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k - 1; ++i) c[static_cast<std::size_t>(i)] = i + 1;
  c[static_cast<std::size_t>(k - 1)] = top;
  const int free = k - 1;
  while (true) {
    visit(std::span<const Value>(c));
    int j = 0;
    // Smallest position that can be bumped without colliding with its successor.
    while (j < free && c[static_cast<std::size_t>(j)] + 1 == c[static_cast<std::size_t>(j + 1)]) ++j;
    if (j >= free) return;
    ++c[static_cast<std::size_t>(j)];
    for (int i = 0; i < j; ++i) c[static_cast<std::size_t>(i)] = i + 1;
  }
}

template <typename F>
void for_each_subset(int q, int k, F&& visit) {
  for (int top = k; top <= q; ++top) for_each_subset_with_max(top, k, visit);
}

// The subset of colex rank `rank` (0-based) among all k-subsets of [1..q].
inline std::vector<Value> colex_unrank(Count rank, int k) {
  std::vector<Value> out(static_cast<std::size_t>(k));
  for (int i = k; i >= 1; --i) {
    // Largest v with C(v-1, i) <= rank.
    Value v = i;
    while (binomial(v, i) <= rank) ++v;
    out[static_cast<std::size_t>(i - 1)] = v;
    rank -= binomial(v - 1, i);
  }
  return out;
}

inline int shard_of_top(int top, int k, int shards) { return (top - k) % shards; }

// Runs `visit(state, elements)` over every k-subset of [1..q], one State per
// shard (each starts as a copy of `init`). Shards are claimed by up to
// `threads` workers; the returned states are in shard order, so any
// in-order reduction is independent of the thread count.
template <typename State, typename Visit>
std::vector<State> sweep_shards(int q, int k, int shards, int threads, const State& init,
                                Visit visit) {
  if (shards < 1) throw InvalidArgument("shard count must be >= 1");
  if (threads < 1) threads = 1;
  std::vector<State> states(static_cast<std::size_t>(shards), init);
  auto run_shard = [&](int s) {
    State& st = states[static_cast<std::size_t>(s)];
    for (int top = k + s; top <= q; top += shards)
      for_each_subset_with_max(top, k, [&](std::span<const Value> e) { visit(st, e); });
  };
  if (threads == 1 || shards == 1) {
    for (int s = 0; s < shards; ++s) run_shard(s);
    return states;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::jthread> pool;
  const int n = std::min(threads, shards);
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (int s = next.fetch_add(1); s < shards; s = next.fetch_add(1)) {
        try {
          run_shard(s);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return states;
}

}  // namespace sumset
