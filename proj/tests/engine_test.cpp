#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sumset/engine.hpp"

using namespace sumset;

namespace {

// hA by repeated set addition, sharing nothing with either engine route.
std::set<Value> iterated_sumset(const std::vector<Value>& a, int h) {
  std::set<Value> cur = {0};
  for (int i = 0; i < h; ++i) {
    std::set<Value> next;
    for (Value s : cur)
      for (Value e : a) next.insert(s + e);
    cur.swap(next);
  }
  return cur;
}

SetVector random_set(std::mt19937_64& rng, int k, Value q) {
  std::uniform_int_distribution<Value> pick(1, q);
  std::set<Value> s;
  while (static_cast<int>(s.size()) < k) s.insert(pick(rng));
  return SetVector::make(std::vector<Value>(s.begin(), s.end()), q);
}

}  // namespace

TEST(SetVector, Validation) {
  auto a = SetVector::make({10, 1, 8, 2});
  EXPECT_EQ(a.to_string(), "{1,2,8,10}");
  EXPECT_EQ(a.q(), 10);
  EXPECT_THROW(SetVector::make({1, 1, 2, 3}), InvalidArgument);
  EXPECT_THROW(SetVector::make({5}), InvalidArgument);
  EXPECT_THROW(SetVector::make({0, 2, 3}), InvalidArgument);
  EXPECT_THROW(SetVector::make({1, 2, 30}, 20), InvalidArgument);
}

TEST(ProfileNaive, WorkedExample) {
  auto a = SetVector::make({1, 2, 8, 10});
  auto p2 = profile_naive(a, 2);
  EXPECT_EQ(p2.size, 10u);
  EXPECT_EQ(p2.max_reps, 1u);
  EXPECT_TRUE(p2.collisions.empty());

  auto p3 = profile_naive(a, 3);
  EXPECT_EQ(p3.size, 19u);
  EXPECT_EQ(p3.deficit, 1u);
  EXPECT_EQ(p3.max_reps, 2u);
  ASSERT_EQ(p3.collisions.size(), 1u);
  EXPECT_EQ(p3.collisions[0].total, 12);
  const std::set<SumVector> reps(p3.collisions[0].representations.begin(),
                                 p3.collisions[0].representations.end());
  EXPECT_EQ(reps, (std::set<SumVector>{SumVector({2, 0, 0, 1}), SumVector({0, 2, 1, 0})}));
}

TEST(ProfileNaive, ArithmeticProgression) {
  auto p = profile_naive(SetVector::make({1, 2, 3, 4}), 2);
  EXPECT_EQ(p.size, 7u);
  EXPECT_EQ(p.sums, (std::vector<Value>{2, 3, 4, 5, 6, 7, 8}));
}

TEST(ProfileNaive, SingletonSpan) {
  const std::vector<Value> one = {7};
  for (int h = 1; h <= 6; ++h) {
    EXPECT_EQ(profile_naive(one, h).size, 1u);
    EXPECT_EQ(profile_fast(one, h).size, 1u);
  }
}

TEST(ProfileNaive, BudgetGuard) {
  Budget tight;
  tight.max_compositions = 19;
  EXPECT_THROW(profile_naive(SetVector::make({1, 2, 8, 10}), 3, tight), BudgetExceeded);
}

TEST(ProfileFast, Examples) {
  EXPECT_EQ(profile_fast(SetVector::make({1, 2, 8, 10}), 3).size, 19u);
  auto fam = profile_fast(SetVector::make({1, 6, 16, 7921}, 8000), 3);
  EXPECT_EQ(fam.size, 19u);
  EXPECT_EQ(fam.deficit, 1u);
  EXPECT_EQ(profile_fast(SetVector::make({1, 2, 3, 4}), 5).size, 16u);
  auto ap = profile_fast(SetVector::make({1, 2, 3, 4}), 6);
  for (int i = 1; i <= 6; ++i) EXPECT_EQ(ap.sizes[static_cast<std::size_t>(i - 1)], Count(3 * i + 1));
}

TEST(ProfileFast, MemoryGuard) {
  Budget tight;
  tight.max_cells = 1000;
  EXPECT_THROW(profile_fast(SetVector::make({1, 6, 16, 7921}, 8000), 3, tight), BudgetExceeded);
}

TEST(ProfileFast, WordBoundarySpreads) {
  // Spreads straddling 64-bit word edges.
  for (Value top : {63, 64, 65, 127, 128, 129, 191, 192}) {
    const std::vector<Value> a = {1, 2, 40, top + 1};
    for (int h = 1; h <= 5; ++h)
      EXPECT_EQ(profile_fast(a, h).size, iterated_sumset(a, h).size()) << top << " " << h;
  }
}

// Oracle equivalence on random inputs: both routes agree with each other and
// with plain set addition.
TEST(ProfileFast, AgreesWithNaiveOnRandomSets) {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> pick_k(2, 6), pick_h(1, 6);
  std::uniform_int_distribution<Value> pick_q(6, 200);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = pick_k(rng), h = pick_h(rng);
    const auto a = random_set(rng, k, pick_q(rng) + k);
    const auto naive = profile_naive(a, h);
    const auto fast = profile_fast(a, h);
    ASSERT_EQ(naive.size, fast.size) << a.to_string() << " h=" << h;
    if (trial % 10 == 0) {
      auto ref = iterated_sumset(std::vector<Value>(a.elements().begin(), a.elements().end()), h);
      ASSERT_EQ(naive.sums, std::vector<Value>(ref.begin(), ref.end()));
    }
  }
}

TEST(ProfileNaive, StructuralInvariants) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_set(rng, 4, 40);
    for (int h = 1; h <= 5; ++h) {
      const auto p = profile_naive(a, h);
      const Count m = multiset_count(h, 4);
      Count excess = 0;
      for (const auto& c : p.collisions) {
        excess += c.representations.size() - 1;
        for (const auto& x : c.representations) EXPECT_EQ(dot(x, a.elements()), c.total);
      }
      EXPECT_EQ(p.size + excess, m);
      EXPECT_LE(p.size, m);
      EXPECT_EQ(p.sums.front(), h * a.min());
      EXPECT_EQ(p.sums.back(), h * a.max());
    }
  }
}

TEST(ProfileFast, DeficitPersists) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = random_set(rng, 4, 60);
    const auto p = profile_fast(a, 8);
    bool seen = false;
    for (int h = 1; h <= 8; ++h) {
      const bool deficit = p.sizes[static_cast<std::size_t>(h - 1)] < multiset_count(h, 4);
      if (seen) EXPECT_TRUE(deficit) << a.to_string() << " h=" << h;
      seen = seen || deficit;
    }
  }
}

TEST(Classify, Examples) {
  auto c = classify(SetVector::make({1, 2, 8, 10}), 6);
  EXPECT_EQ(c.h_star, 2);
  EXPECT_FALSE(c.capped);
  ASSERT_TRUE(c.first_collision);
  EXPECT_EQ(c.first_collision->total, 12);

  EXPECT_EQ(classify(SetVector::make({1, 2, 3, 4}), 6).h_star, 1);

  auto fam = classify(SetVector::make({1, 6, 16, 7921}, 8000), 6);
  EXPECT_EQ(fam.h_star, 2);
  ASSERT_TRUE(fam.first_collision);
  // 2a + c = 3b
  EXPECT_EQ(fam.first_collision->total, 18);
}

TEST(Classify, CapIsFlagged) {
  auto c = classify(SetVector::make({1, 2, 8, 10}), 2);
  EXPECT_TRUE(c.capped);
  EXPECT_EQ(c.h_star, 2);
  EXPECT_FALSE(c.first_collision);
  EXPECT_THROW(classify(SetVector::make({1, 2, 8, 10}), 0), InvalidArgument);
}

TEST(Classify, MatchesNaiveDefinition) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_set(rng, 4, 50);
    const auto c = classify(a, 5);
    for (int h = 1; h <= c.h_star; ++h) EXPECT_EQ(profile_naive(a, h).max_reps, 1u);
    if (!c.capped) EXPECT_GE(profile_naive(a, c.h_star + 1).max_reps, 2u);
  }
}

TEST(Classify, VanishingDeficitIsAnInvariantViolation) {
  const std::vector<Count> sizes = {4, 9, 20};  // deficit at 2, none at 3
  EXPECT_THROW(classify_sizes(sizes, 4), InvariantViolation);
}

TEST(GapBoundCheck, WorkedExample) {
  auto rows = gap_bound_check(SetVector::make({1, 2, 8, 10}), 2, 3);
  ASSERT_EQ(rows.size(), 3u);
  // Deficits 1, 5, 15 from direct enumeration.
  EXPECT_EQ(rows[0].deficit, 1u);
  EXPECT_EQ(rows[1].deficit, 5u);
  EXPECT_EQ(rows[2].deficit, 15u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.bound, tetrahedral(r.l));
    EXPECT_TRUE(r.satisfied);
  }
  EXPECT_TRUE(rows[0].equality);
  EXPECT_FALSE(rows[1].equality);
}

TEST(GapBoundCheck, FamilyMemberMeetsBoundExactly) {
  auto rows = gap_bound_check(SetVector::make({1, 6, 16, 7921}, 8000), 2, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].deficit, 1u);
  EXPECT_TRUE(rows[0].equality);
}

TEST(GapBoundCheck, Preconditions) {
  EXPECT_THROW(gap_bound_check(SetVector::make({1, 2, 3, 4}), 2, 2), PreconditionError);
  EXPECT_THROW(gap_bound_check(SetVector::make({1, 2, 8, 10, 30}), 2, 2), PreconditionError);
  EXPECT_NO_THROW(gap_bound_check(SetVector::make({1, 2, 3, 4}), 1, 3));
}
