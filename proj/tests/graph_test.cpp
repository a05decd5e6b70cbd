#include <gtest/gtest.h>

#include <random>

#include "lll/graph.hpp"

using namespace lll;

namespace {

DependencyGraph triangle() { return DependencyGraph::complete(3); }

// Brute force over all subsets, independent of the incremental enumerator.
std::vector<Mask> brute_independent(const DependencyGraph& g) {
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << g.n()); ++s) {
    bool ok = true;
    for (int a = 0; a < g.n() && ok; ++a)
      for (int b = a + 1; b < g.n() && ok; ++b)
        if ((s & bit(a)) && (s & bit(b)) && g.adjacent(a, b)) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

DependencyGraph random_graph(int n, double density, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> e;
  std::bernoulli_distribution coin(density);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return DependencyGraph(n, e);
}

}  // namespace

TEST(ClosedNeighborhood, IsolatedVertex) {
  auto g = DependencyGraph::empty(3);
  std::vector<int> I{0};
  EXPECT_EQ(closed_neighborhood(g, I), (EventSet{0}));
}

TEST(ClosedNeighborhood, Triangle) {
  std::vector<int> I{0};
  EXPECT_EQ(closed_neighborhood(triangle(), I), (EventSet{0, 1, 2}));
}

TEST(ClosedNeighborhood, PathEnds) {
  std::vector<int> I{0, 2};
  EXPECT_EQ(closed_neighborhood(DependencyGraph::path(3), I), (EventSet{0, 1, 2}));
}

TEST(ClosedNeighborhood, OutOfRangeThrows) {
  std::vector<int> I{3};
  EXPECT_THROW(closed_neighborhood(DependencyGraph::path(3), I), std::out_of_range);
}

TEST(ClosedNeighborhood, ContainsInput) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    auto g = random_graph(8, 0.3, rng);
    EventSet I;
    for (int i = 0; i < 8; ++i)
      if (rng() & 1) I.push_back(i);
    auto out = closed_neighborhood(g, I);
    for (int i : I) EXPECT_TRUE(std::binary_search(out.begin(), out.end(), i));
    EXPECT_EQ(to_mask(out), g.closed_mask_of(to_mask(I)));
  }
}

TEST(IsIndependent, Examples) {
  EXPECT_TRUE(is_independent(triangle(), std::vector<int>{}));
  EXPECT_FALSE(is_independent(triangle(), std::vector<int>{0, 1}));
  EXPECT_TRUE(is_independent(DependencyGraph::path(3), std::vector<int>{0, 2}));
  EXPECT_THROW(is_independent(triangle(), std::vector<int>{5}), std::out_of_range);
}

TEST(EnumerateIndependent, Examples) {
  auto e2 = enumerate_independent_sets(DependencyGraph::empty(2));
  EXPECT_EQ(e2, (std::vector<EventSet>{{}, {0}, {1}, {0, 1}}));
  auto tri = enumerate_independent_sets(triangle());
  EXPECT_EQ(tri, (std::vector<EventSet>{{}, {0}, {1}, {2}}));
  EXPECT_EQ(enumerate_independent_sets(DependencyGraph::path(3)).size(), brute_independent(DependencyGraph::path(3)).size());
  EXPECT_EQ(enumerate_independent_sets(DependencyGraph::path(3)).size(), 5u);
}

TEST(EnumerateIndependent, MatchesBruteForceAndIsDownwardClosed) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    auto g = random_graph(1 + static_cast<int>(rng() % 10), 0.35, rng);
    auto masks = enumerate_independent_masks(g);
    EXPECT_EQ(masks, brute_independent(g));
    for (Mask m : masks)
      for (Mask sub = m; sub; sub = (sub - 1) & m)
        EXPECT_TRUE(std::binary_search(masks.begin(), masks.end(), sub));
  }
}

TEST(EnumerateIndependent, CapExceeded) {
  EXPECT_THROW(enumerate_independent_sets(DependencyGraph::empty(26)), CapExceeded);
  EXPECT_EQ(enumerate_independent_sets(DependencyGraph::empty(4), 4).size(), 16u);
}

TEST(ValidateSequence, Examples) {
  auto path = DependencyGraph::path(3);
  EXPECT_TRUE(validate_sequence(path, StableSetSequence{}));
  EXPECT_TRUE(validate_sequence(path, StableSetSequence{{{0}, {1}}}));
  EXPECT_FALSE(validate_sequence(path, StableSetSequence{{{0}, {2}}}));
}

TEST(ValidateSequence, RejectsDependentSetAndGaps) {
  auto path = DependencyGraph::path(3);
  EXPECT_FALSE(validate_sequence(path, StableSetSequence{{{0, 1}}}));
  EXPECT_FALSE(validate_sequence(path, StableSetSequence{{{0}, {}, {0}}}));
  EXPECT_TRUE(validate_sequence(path, StableSetSequence{{{0}, {}, {}}}));
  EXPECT_FALSE(validate_sequence(path, StableSetSequence{{{7}}}));
}

TEST(ValidateSequence, PrefixClosed) {
  std::mt19937_64 rng(3);
  auto g = DependencyGraph::path(6);
  int valid_seen = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    StableSetSequence seq;
    const int len = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < len; ++s) {
      EventSet set;
      for (int i = 0; i < 6; ++i)
        if (rng() % 3 == 0) set.push_back(i);
      seq.sets.push_back(set);
    }
    if (!validate_sequence(g, seq)) continue;
    ++valid_seen;
    while (!seq.sets.empty()) {
      seq.sets.pop_back();
      EXPECT_TRUE(validate_sequence(g, seq));
    }
  }
  EXPECT_GT(valid_seen, 20);
}

TEST(DependencyGraph, SymmetricIrreflexive) {
  DependencyGraph g(4, std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 3}});
  EXPECT_EQ(g.num_edges(), 2u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_FALSE(g.adjacent(i, i));
    for (int j = 0; j < 4; ++j) EXPECT_EQ(g.adjacent(i, j), g.adjacent(j, i));
  }
  EXPECT_THROW(DependencyGraph(2, std::vector<std::pair<int, int>>{{1, 1}}), InputError);
  EXPECT_THROW(DependencyGraph(2, std::vector<std::pair<int, int>>{{0, 2}}), std::out_of_range);
}
