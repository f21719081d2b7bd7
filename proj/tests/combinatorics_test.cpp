#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "sumset/combinatorics.hpp"

using namespace sumset;

namespace {

// Independent count of X_{h,k}: number of ways to split h over k slots.
Count count_compositions_recursive(int h, int k) {
  if (k == 1) return 1;
  Count n = 0;
  for (int first = 0; first <= h; ++first) n += count_compositions_recursive(h - first, k - 1);
  return n;
}

}  // namespace

TEST(MultisetCount, SmallValues) {
  EXPECT_EQ(multiset_count(2, 4), 10u);
  EXPECT_EQ(multiset_count(3, 4), 20u);
  EXPECT_EQ(multiset_count(5, 4), 56u);
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(multiset_count(0, k), 1u);
}

TEST(MultisetCount, PascalRecurrence) {
  for (int h = 1; h <= 30; ++h)
    for (int k = 2; k <= 10; ++k)
      EXPECT_EQ(multiset_count(h, k), multiset_count(h - 1, k) + multiset_count(h, k - 1))
          << "h=" << h << " k=" << k;
}

TEST(MultisetCount, MatchesRecursiveCount) {
  for (int h = 0; h <= 10; ++h)
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(multiset_count(h, k), count_compositions_recursive(h, k));
}

TEST(MultisetCount, OverflowIsReported) {
  EXPECT_THROW(multiset_count(200, 40), OverflowError);
  EXPECT_THROW(binomial(200, 100), OverflowError);
  EXPECT_NO_THROW(binomial(67, 33));
  EXPECT_THROW(multiset_count(-1, 3), InvalidArgument);
  EXPECT_THROW(multiset_count(2, 0), InvalidArgument);
  EXPECT_THROW(checked_mul(UINT64_MAX, 2), OverflowError);
}

TEST(Tetrahedral, LadderValues) {
  EXPECT_EQ(tetrahedral(0), 0u);
  EXPECT_EQ(tetrahedral(1), 1u);
  EXPECT_EQ(tetrahedral(2), 4u);
  EXPECT_EQ(tetrahedral(3), 10u);
  EXPECT_EQ(tetrahedral(4), 20u);
  EXPECT_EQ(tetrahedral(10), 220u);
}

TEST(Tetrahedral, DifferencesAreTriangular) {
  for (int l = 0; l < 200; ++l)
    EXPECT_EQ(tetrahedral(l + 1) - tetrahedral(l), Count(l + 1) * Count(l + 2) / 2);
}

TEST(FigurateGap, Values) {
  EXPECT_EQ(figurate_gap(7, 1, 4), 1u);
  EXPECT_EQ(figurate_gap(7, 3, 4), 10u);
  EXPECT_EQ(figurate_gap(7, 2, 5), 5u);
  // k = 4: the deficit at step i is the i-th tetrahedral number.
  for (int i = 1; i <= 20; ++i) EXPECT_EQ(figurate_gap(3, i, 4), tetrahedral(i));
  // Second step loses k sums.
  for (int k = 2; k <= 9; ++k) EXPECT_EQ(figurate_gap(1, 2, k), Count(k));
  EXPECT_EQ(predicted_frequent_size(2, 3, 4), multiset_count(5, 4) - 10);
  EXPECT_THROW(figurate_gap(2, 0, 4), InvalidArgument);
  EXPECT_THROW(figurate_gap(2, 1, 1), InvalidArgument);
}

TEST(Compositions, ExplicitLists) {
  auto basis = enumerate_compositions(1, 4);
  ASSERT_EQ(basis.size(), 4u);
  EXPECT_EQ(basis[0], SumVector({0, 0, 0, 1}));
  EXPECT_EQ(basis[1], SumVector({0, 0, 1, 0}));
  EXPECT_EQ(basis[2], SumVector({0, 1, 0, 0}));
  EXPECT_EQ(basis[3], SumVector({1, 0, 0, 0}));

  auto two = enumerate_compositions(2, 2);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[0], SumVector({0, 2}));
  EXPECT_EQ(two[1], SumVector({1, 1}));
  EXPECT_EQ(two[2], SumVector({2, 0}));

  EXPECT_EQ(enumerate_compositions(3, 4).size(), count_compositions_recursive(3, 4));
  EXPECT_EQ(enumerate_compositions(0, 3).size(), 1u);
}

TEST(Compositions, LexicographicUniqueAndValid) {
  for (int h = 0; h <= 10; ++h)
    for (int k = 1; k <= 6; ++k) {
      auto xs = enumerate_compositions(h, k);
      ASSERT_EQ(xs.size(), multiset_count(h, k));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_EQ(xs[i].degree(), h);
        EXPECT_EQ(xs[i].arity(), static_cast<std::size_t>(k));
        if (i) EXPECT_LT(xs[i - 1], xs[i]);
      }
    }
}

TEST(Compositions, BudgetGuard) {
  Budget tight;
  tight.max_compositions = 10;
  EXPECT_NO_THROW(enumerate_compositions(2, 4, tight));
  EXPECT_THROW(enumerate_compositions(3, 4, tight), BudgetExceeded);
}

TEST(Support, Examples) {
  EXPECT_EQ(support(SumVector({2, 0, 0, 1})), (std::vector<int>{1, 4}));
  EXPECT_TRUE(support(SumVector({0, 0, 0, 0})).empty());
  EXPECT_EQ(support(SumVector({1, 1, 1, 1})), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_THROW(SumVector({1, -1}), InvalidArgument);
}

TEST(DisjointPairs, PaperCounts) {
  auto p1 = disjoint_support_pairs(1, 4);
  EXPECT_EQ(p1.total_disjoint_pairs, 6u);
  EXPECT_EQ(p1.nontrivial_pairs, 0u);
  auto p2 = disjoint_support_pairs(2, 4);
  EXPECT_EQ(p2.total_disjoint_pairs, 21u);
  EXPECT_EQ(p2.nontrivial_pairs, 15u);
  EXPECT_EQ(disjoint_support_pairs(3, 4).nontrivial_pairs, 40u);
  EXPECT_EQ(disjoint_support_pairs(4, 4).nontrivial_pairs, 75u);
}

TEST(DisjointPairs, ClosedFormThroughTwelve) {
  for (int h = 1; h <= 12; ++h) {
    auto c = disjoint_support_pairs(h, 4);
    EXPECT_EQ(c.total_disjoint_pairs, Count(5 * h * h + 1)) << h;
    EXPECT_EQ(c.nontrivial_pairs, Count(5 * h * h - 5)) << h;
  }
}

TEST(DisjointPairs, NontrivialDropsBasisPairsForAnyK) {
  for (int k = 2; k <= 6; ++k)
    for (int h = 1; h <= 6; ++h) {
      auto c = disjoint_support_pairs(h, k);
      EXPECT_EQ(c.total_disjoint_pairs - c.nontrivial_pairs, binomial(k, 2));
    }
}

TEST(DisjointPairs, DotZeroIffDisjoint) {
  for (int h = 1; h <= 6; ++h) {
    auto xs = enumerate_compositions(h, 4);
    for (const auto& x : xs)
      for (const auto& y : xs) EXPECT_EQ(dot(x, y) == 0, disjoint_support(x, y));
    Count visited = 0;
    for_each_disjoint_pair(xs, [&](const SumVector& x, const SumVector& y) {
      ++visited;
      EXPECT_EQ(dot(x, y), 0);
      const auto sup = support(x);
      std::set<int> sx(sup.begin(), sup.end());
      for (int i : support(y)) EXPECT_EQ(sx.count(i), 0u);
    });
    EXPECT_EQ(visited, Count(5 * h * h + 1));
  }
}

TEST(DisjointPairs, Guards) {
  EXPECT_THROW(disjoint_support_pairs(0, 4), PreconditionError);
  Budget tight;
  tight.max_pairs = 100;
  EXPECT_THROW(disjoint_support_pairs(5, 4, tight), BudgetExceeded);
}
