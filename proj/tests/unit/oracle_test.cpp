#include <gtest/gtest.h>

#include <random>

#include "sensmatch/errors.hpp"
#include "sensmatch/generators.hpp"
#include "sensmatch/io.hpp"
#include "sensmatch/oracle.hpp"
#include "support/brute_force.hpp"

using namespace sensmatch;

TEST(Oracle, KnownValues) {
  EXPECT_EQ(max_matching(load_graph("6 5\n0 1\n2 3\n0 5\n1 2\n3 4\n")).size, 3u);
  EXPECT_EQ(max_matching(cycle(5)).size, 2u);
  EXPECT_EQ(max_matching(path(7)).size, 3u);
  EXPECT_EQ(max_matching(Graph(4)).size, 0u);
  WeightedGraph w = WeightedGraph::from_edges(4, {{{0, 1}, 1.0}, {{1, 2}, 5.0}, {{2, 3}, 1.0}});
  WeightOptimum o = max_weight_matching(w);
  EXPECT_DOUBLE_EQ(o.weight, 5.0);
  EXPECT_EQ(o.witness, Matching({{1, 2}}));
}

TEST(Oracle, MatchesExhaustive) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    Graph g = testsupport::random_small_graph(3 + rng() % 8, 12, rng);
    CardinalityOptimum c = max_matching(g);
    EXPECT_EQ(c.size, testsupport::exhaustive_max_matching(g));
    EXPECT_TRUE(is_matching(g, c.witness));
    EXPECT_EQ(c.witness.size(), c.size);
    WeightedGraph w = with_uniform_weights(g, 1, 20, rng());
    WeightOptimum o = max_weight_matching(w);
    EXPECT_DOUBLE_EQ(o.weight, testsupport::exhaustive_max_weight(w));
    EXPECT_TRUE(is_matching(g, o.witness));
    EXPECT_DOUBLE_EQ(matching_weight(o.witness, w), o.weight);
  }
}

TEST(Oracle, Guard) {
  EXPECT_THROW(max_matching(path(30)), GuardExceeded);
  EXPECT_NO_THROW(max_matching(path(30), 30));
  EXPECT_THROW(max_matching(path(5), 40), std::invalid_argument);
}

TEST(Oracle, SmallWeightedExamples) {
  EXPECT_EQ(max_matching(path(4)).size, 2u);
  EXPECT_DOUBLE_EQ(max_weight_matching(WeightedGraph::from_edges(2, {{{0, 1}, 7.0}})).weight, 7.0);
  EXPECT_DOUBLE_EQ(max_weight_matching(WeightedGraph::from_edges(3, {{{0, 1}, 3.0}, {{1, 2}, 4.0}})).weight, 4.0);
}
