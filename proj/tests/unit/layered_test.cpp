#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>

#include "sensmatch/generators.hpp"
#include "sensmatch/greedy.hpp"
#include "sensmatch/io.hpp"
#include "sensmatch/layered.hpp"
#include "sensmatch/perturbation.hpp"
#include "support/brute_force.hpp"

using namespace sensmatch;

namespace {

Graph six_vertex_graph() { return load_graph("6 5\n0 1\n2 3\n0 5\n1 2\n3 4\n"); }

// 5 on top, 4 at the bottom, (0,1) in layer 2 and (2,3) in layer 1.
Activation forcing_activation() {
  Activation a;
  a.path_param = 2;
  a.free_side.assign(6, Activation::kInactive);
  a.free_side[4] = 0;
  a.free_side[5] = 3;
  a.slots = {{0, 1, 2}, {2, 3, 1}};
  return a;
}

}  // namespace

TEST(Layered, ForcedActivationStructure) {
  Graph g = six_vertex_graph();
  Matching m({{0, 1}, {2, 3}});
  LayeredGraph h(g, m, forcing_activation());
  EXPECT_EQ(h.num_layers(), 4u);
  EXPECT_EQ(h.num_nodes(), 4u);
  EXPECT_EQ(h.num_edges(), 3u);
  ASSERT_EQ(h.layer(3).size(), 1u);
  EXPECT_EQ(h.node(h.layer(3)[0]).upper, 5u);
  EXPECT_EQ(h.debug_dump(), "1 2 3 -> 0 4 -\n2 0 1 -> 1 2 3\n3 5 - -> 2 0 1\n");
}

TEST(Layered, ForcedActivationPath) {
  Graph g = six_vertex_graph();
  Matching m({{0, 1}, {2, 3}});
  LayeredGraph h(g, m, forcing_activation());
  TagFunction tags(h.num_nodes());
  find_paths(h, h.layer(3), 3, 0.5, tags, RandomTape(1), InvocationPath{});
  auto paths = decode_paths(h, tags);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].vertices, (std::vector<Vertex>{5, 0, 1, 2, 3, 4}));
  EXPECT_EQ(paths[0].length(), 5u);
  Matching next = apply_augmentations(m, paths);
  EXPECT_EQ(next, Matching({{0, 5}, {1, 2}, {3, 4}}));
}

TEST(Layered, RejectsBadActivation) {
  Graph g = six_vertex_graph();
  Matching m({{0, 1}, {2, 3}});
  Activation a = forcing_activation();
  a.free_side[0] = 0;
  EXPECT_THROW(LayeredGraph(g, m, a), std::invalid_argument);
  a = forcing_activation();
  a.slots[0].layer = 3;
  EXPECT_THROW(LayeredGraph(g, m, a), std::invalid_argument);
  EXPECT_THROW(LayeredGraph(g, Matching({{0, 1}, {1, 2}}), forcing_activation()), std::invalid_argument);
}

TEST(Layered, LoopAndNominalCounts) {
  EXPECT_EQ(loop_count(0.5), 2u);
  EXPECT_EQ(loop_count(1.0 / 3.0), 3u);
  EXPECT_EQ(loop_count(0.3), 4u);
  EXPECT_EQ(nominal_greedy_calls(1, 0.5), 1u);
  // 1 + 2 * (C(1, 1/4) + 1)
  EXPECT_EQ(nominal_greedy_calls(2, 0.5), 5u);
  // 1 + 2 * (C(2, 1/4) + 1), C(2, 1/4) = 1 + 4 * 2 = 9
  EXPECT_EQ(nominal_greedy_calls(3, 0.5), 21u);
  EXPECT_EQ(nominal_greedy_calls(30, 0.01), UINT64_MAX);
}

TEST(Layered, FoundPathsAreValidAndDisjoint) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 4 + rng() % 27;
    Graph g = testsupport::random_graph(n, 0.25, rng);
    Matching m = testsupport::random_matching(g, rng);
    const std::uint32_t l = 1 + static_cast<std::uint32_t>(rng() % 3);
    const double delta = (rng() & 1) ? 0.5 : 0.3;
    RandomTape tape(rng());
    auto paths = augmenting_paths(g, m, l, delta, tape, InvocationPath{});
    std::vector<bool> seen(n, false);
    for (const auto& p : paths) {
      ASSERT_EQ(testsupport::check_augmenting_path(g, m, p.vertices, l), "");
      for (Vertex v : p.vertices) {
        ASSERT_FALSE(seen[v]);
        seen[v] = true;
      }
    }
    Matching next = apply_augmentations(m, paths);
    EXPECT_TRUE(is_matching(g, next));
    EXPECT_EQ(next.size(), m.size() + paths.size());
  }
}

TEST(Layered, ActiveSetIgnoresNonMatchingEdges) {
  Graph g = gnp(40, 0.15, 5);
  RandomTape tape(3);
  Matching m = randomized_greedy(g, tape);
  auto scope = InvocationPath{}.child(Frame::kPhase, 2).child(Frame::kRound, 1);
  auto base = build_layered(g, m, 2, tape, scope).active_set();
  for (const Edge& e : g.edges()) {
    if (m.contains(e)) continue;
    Graph h = apply_perturbation(g, DeleteEdge{e});
    EXPECT_EQ(build_layered(h, m, 2, tape, scope).active_set(), base);
  }
}

TEST(Layered, CallTraceDependsOnlyOnParameters) {
  Graph g = gnp(40, 0.15, 6);
  RandomTape tape(4);
  Matching m = randomized_greedy(g, tape);
  Graph h = apply_perturbation(g, DeleteEdge{g.edges()[0]});
  Matching mh = randomized_greedy(h, tape);
  std::vector<std::uint64_t> tg, th;
  FindPathsStats sg, sh;
  sg.call_trace = &tg;
  sh.call_trace = &th;
  augmenting_paths(g, m, 2, 0.5, tape, InvocationPath{}, &sg);
  augmenting_paths(h, mh, 2, 0.5, tape, InvocationPath{}, &sh);
  EXPECT_EQ(tg, th);
  EXPECT_EQ(tg.size(), nominal_greedy_calls(3, 0.5));
  EXPECT_EQ(sg.nominal_greedy_calls, tg.size());
}

TEST(Layered, FindPathsValidatesArguments) {
  Graph g = six_vertex_graph();
  Matching m({{0, 1}, {2, 3}});
  LayeredGraph h(g, m, forcing_activation());
  TagFunction tags(h.num_nodes());
  RandomTape tape(0);
  EXPECT_THROW(find_paths(h, h.layer(3), 3, 0.0, tags, tape, {}), std::invalid_argument);
  EXPECT_THROW(find_paths(h, h.layer(3), 3, 1.5, tags, tape, {}), std::invalid_argument);
  EXPECT_THROW(find_paths(h, h.layer(3), 0, 0.5, tags, tape, {}), std::invalid_argument);
  EXPECT_THROW(find_paths(h, h.layer(3), 2, 0.5, tags, tape, {}), std::invalid_argument);
}

TEST(Layered, ApplyRejectsBadPaths) {
  Matching m({{1, 2}});
  std::vector<AugmentingPath> shortp{{{0, 1}}};
  EXPECT_THROW(apply_augmentations(m, shortp), std::invalid_argument);
  std::vector<AugmentingPath> covered{{{1, 2, 3, 4}}};
  EXPECT_THROW(apply_augmentations(m, covered), std::invalid_argument);
  std::vector<AugmentingPath> overlap{{{0, 1, 2, 3}}, {{5, 1, 2, 6}}};
  EXPECT_THROW(apply_augmentations(m, overlap), std::invalid_argument);
  std::vector<AugmentingPath> ok{{{0, 1, 2, 3}}};
  EXPECT_EQ(apply_augmentations(m, ok), Matching({{0, 1}, {2, 3}}));
}

TEST(Layered, EmptyMatchingHasNoMiddleNodes) {
  Graph g = path(5);
  LayeredGraph h = build_layered(g, Matching(), 2, RandomTape(1), InvocationPath{});
  for (std::uint32_t i = 1; i <= 2; ++i) EXPECT_TRUE(h.layer(i).empty());
  EXPECT_EQ(h.num_edges(), 0u);
  EXPECT_EQ(h.layer(0).size() + h.layer(3).size(), 5u);
}

TEST(Layered, BoundariesHoldOnlyFreeVertices) {
  Graph g = path(4);
  Matching m({{1, 2}});
  for (std::uint64_t s = 0; s < 20; ++s) {
    LayeredGraph h = build_layered(g, m, 1, RandomTape(s), InvocationPath{});
    for (std::uint32_t i : {0u, 2u}) {
      for (NodeId id : h.layer(i)) EXPECT_TRUE(h.node(id).upper == 0 || h.node(id).upper == 3);
    }
    EXPECT_EQ(h.layer(0).size() + h.layer(2).size(), 2u);
    EXPECT_EQ(h.layer(1).size(), 1u);
  }
}

TEST(Layered, NoPathsWhenNoneExist) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    for (std::uint32_t l = 1; l <= 3; ++l) {
      EXPECT_TRUE(augmenting_paths(path(4), Matching({{0, 1}, {2, 3}}), l, 0.5, RandomTape(s), {}).empty());
    }
    EXPECT_TRUE(augmenting_paths(path(2), Matching(), 1, 0.5, RandomTape(s), {}).empty());
  }
}

TEST(Layered, EmptySourceSetIsNoOp) {
  Graph g = six_vertex_graph();
  LayeredGraph h(g, Matching({{0, 1}, {2, 3}}), forcing_activation());
  TagFunction tags(h.num_nodes());
  find_paths(h, {}, 3, 0.5, tags, RandomTape(0), {});
  for (NodeId id = 0; id < h.num_nodes(); ++id) EXPECT_TRUE(tags.untagged(id));
}

TEST(Layered, BaseCaseTagsSingleNeighbor) {
  Graph g = six_vertex_graph();
  LayeredGraph h(g, Matching({{0, 1}, {2, 3}}), forcing_activation());
  TagFunction tags(h.num_nodes());
  find_paths(h, h.layer(1), 1, 0.5, tags, RandomTape(0), {});
  const NodeId src = h.layer(1)[0];
  ASSERT_TRUE(tags.is_pointer(src));
  EXPECT_EQ(h.node(tags.pointer(src)).upper, 4u);
}

TEST(Layered, ForcedActivationTags) {
  Graph g = six_vertex_graph();
  LayeredGraph h(g, Matching({{0, 1}, {2, 3}}), forcing_activation());
  TagFunction tags(h.num_nodes());
  find_paths(h, h.layer(3), 3, 0.5, tags, RandomTape(0), {});
  NodeId cur = h.layer(3)[0];
  std::vector<LayerNode> chain{h.node(cur)};
  while (tags.is_pointer(cur)) {
    cur = tags.pointer(cur);
    chain.push_back(h.node(cur));
  }
  EXPECT_EQ(chain, (std::vector<LayerNode>{{3, 5, kNoVertex}, {2, 0, 1}, {1, 2, 3}, {0, 4, kNoVertex}}));
}

TEST(Layered, ApplyEmptyAndLengthOne) {
  Matching m({{0, 1}});
  EXPECT_EQ(apply_augmentations(m, {}), m);
  std::vector<AugmentingPath> one{{{0, 1}}};
  EXPECT_THROW(apply_augmentations(Matching(), one), std::invalid_argument);
}

TEST(Layered, ActiveSetStability) {
  // |active(G, M) xor active(G', M')| <= 3 d_H(E, E') + 3 d_H(M, M') under a shared tape.
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    Graph g = testsupport::random_graph(20, 0.2, rng);
    if (g.num_edges() == 0) continue;
    const Edge e = g.edges()[rng() % g.num_edges()];
    Graph h = apply_perturbation(g, DeleteEdge{e});
    RandomTape tape(rng());
    Matching m = randomized_greedy(g, tape), mh = randomized_greedy(h, tape);
    const std::uint32_t l = 1 + static_cast<std::uint32_t>(rng() % 3);
    auto a = build_layered(g, m, l, tape, {}).active_set();
    auto b = build_layered(h, mh, l, tape, {}).active_set();
    std::vector<LayerNode> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    EXPECT_LE(diff.size(), 3 * 1 + 3 * hamming(m, mh));
  }
}
