#include <gtest/gtest.h>

#include <sstream>

#include "sensmatch/errors.hpp"
#include "sensmatch/generators.hpp"
#include "sensmatch/greedy.hpp"
#include "sensmatch/sensitivity.hpp"
#include "support/brute_force.hpp"

using namespace sensmatch;

TEST(Estimate, TriangleGreedyMean) {
  WeightedGraph g = WeightedGraph::unit(cycle(3));
  std::vector<Perturbation> ps{DeleteEdge{{0, 1}}};
  EstimateOptions o;
  o.trials = 20000;
  o.base_seed = 3;
  SensitivityReport r = estimate(greedy_algorithm(), g, ps, o);
  ASSERT_EQ(r.perturbations.size(), 1u);
  const auto& row = r.perturbations[0];
  EXPECT_NEAR(row.mean, 2.0 / 3.0, 4 * row.se);
  EXPECT_DOUBLE_EQ(row.max, 2.0);
  EXPECT_DOUBLE_EQ(row.se, testsupport::standard_error(row.raw));
  EXPECT_DOUBLE_EQ(row.mean, testsupport::mean(row.raw));
}

TEST(Estimate, RawMatchesDirectCoupledRuns) {
  WeightedGraph g = WeightedGraph::unit(gnp(30, 0.15, 2));
  Perturbation p = DeleteVertex{4};
  std::vector<Perturbation> ps{p};
  EstimateOptions o;
  o.trials = 50;
  o.base_seed = 11;
  SensitivityReport r = estimate(greedy_algorithm(), g, ps, o);
  WeightedGraph h = apply_perturbation(g, p);
  for (std::size_t t = 0; t < o.trials; ++t) {
    RandomTape tape = trial_tape(11, t);
    const double d = static_cast<double>(hamming(randomized_greedy(g.graph(), tape), randomized_greedy(h.graph(), tape)));
    EXPECT_DOUBLE_EQ(r.perturbations[0].raw[t], d);
  }
}

TEST(Estimate, JobsDoNotChangeOutput) {
  WeightedGraph g = with_uniform_weights(gnp(40, 0.1, 1), 1, 10, 2);
  auto ps = all_edge_deletions(g.graph());
  EstimateOptions o;
  o.trials = 20;
  o.mode = Mode::kNormalized;
  SensitivityReport a = estimate(weighted_algorithm(2.0), g, ps, o);
  o.jobs = 4;
  SensitivityReport b = estimate(weighted_algorithm(2.0), g, ps, o);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Estimate, Validation) {
  WeightedGraph g = WeightedGraph::unit(path(4));
  std::vector<Perturbation> missing{DeleteEdge{{0, 1}}, DeleteEdge{{0, 3}}};
  EXPECT_THROW(estimate(greedy_algorithm(), g, missing, {}), NotFoundError);
  std::vector<Perturbation> vertex{DeleteVertex{0}};
  EstimateOptions o;
  o.mode = Mode::kNormalized;
  EXPECT_THROW(estimate(greedy_algorithm(), g, vertex, o), std::invalid_argument);
  o = {};
  o.trials = 0;
  EXPECT_THROW(estimate(greedy_algorithm(), g, vertex, o), std::invalid_argument);
}

TEST(Estimate, DeterministicAlgorithmHasZeroSpread) {
  WeightedGraph g = WeightedGraph::unit(bounded_degree(60, 3, 4));
  auto ps = all_edge_deletions(g.graph());
  EstimateOptions o;
  o.trials = 3;
  SensitivityReport r = estimate(lca_algorithm(3), g, ps, o);
  for (const auto& row : r.perturbations) EXPECT_DOUBLE_EQ(row.se, 0.0);
}

TEST(Report, JsonLayout) {
  WeightedGraph g = WeightedGraph::unit(path(4));
  std::vector<Perturbation> ps{DeleteEdge{{1, 2}}};
  EstimateOptions o;
  o.trials = 4;
  Json j = to_json(estimate(greedy_algorithm(), g, ps, o));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"quantity", "schema_version", "algorithm", "params", "graph_digest", "mode",
                                            "trials", "sample_size", "population", "perturbations", "worst_case",
                                            "average", "seeds"}));
  EXPECT_EQ(j["quantity"], "coupled-EMD-upper-bound");
  EXPECT_EQ(j["perturbations"][0]["raw"].size(), 4u);
  EXPECT_FALSE(to_json(estimate(greedy_algorithm(), g, ps, o), false)["perturbations"][0].contains("raw"));

  std::ostringstream csv;
  write_csv(csv, estimate(greedy_algorithm(), g, ps, o));
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "target,mean,se,max,trials");
}

TEST(Sampling, CapAndOrder) {
  auto pop = all_edge_deletions(gnp(60, 0.5, 1));
  ASSERT_GT(pop.size(), 512u);
  auto s = sample_perturbations(pop, 4);
  EXPECT_EQ(s.size(), kPerturbationSampleCap);
  EXPECT_EQ(s, sample_perturbations(pop, 4));
  std::size_t pos = 0;
  for (const auto& p : s) {
    while (pos < pop.size() && !(pop[pos] == p)) ++pos;
    ASSERT_LT(pos, pop.size());
  }
  auto small = all_edge_deletions(path(5));
  EXPECT_EQ(sample_perturbations(small, 1), small);
}

TEST(LowerBound, GreedyAdversary) {
  for (std::size_t n : {4u, 5u, 10u, 51u}) {
    AdversarialInstance inst = adversarial_greedy_instance(n);
    Matching a = greedy_matching(inst.graph, inst.order);
    Matching b = greedy_matching(apply_perturbation(inst.graph, inst.deletion), inst.order);
    // Every path edge is in exactly one of the two matchings.
    EXPECT_EQ(hamming(a, b), n - 1) << n;
    EXPECT_GE(hamming(a, b), n - 3);
  }
  EXPECT_THROW(adversarial_greedy_instance(3), std::invalid_argument);
}

TEST(LowerBound, CycleLength) {
  EXPECT_EQ(lower_bound_cycle_length(0.025), 4u);
  EXPECT_EQ(lower_bound_cycle_length(0.01), 10u);
  EXPECT_THROW(lower_bound_cycle_length(0.02), std::invalid_argument);
  EXPECT_THROW(lower_bound_cycle_length(0.03), std::invalid_argument);
}

TEST(LowerBound, RandomizedExperimentOnCycle) {
  LowerBoundReport r = randomized_lb_experiment(0.01, greedy_algorithm(), 400, 2);
  EXPECT_EQ(r.cycle_length, 10u);
  EXPECT_LE(r.first_class_hits + r.second_class_hits, 400u);
  EXPECT_TRUE(r.deleted == (Edge{0, 1}) || r.deleted == (Edge{1, 2}));
  EXPECT_EQ(to_json(r)["cycle_length"], 10);
}

TEST(Estimate, TriangleAllEdges) {
  WeightedGraph g = WeightedGraph::unit(cycle(3));
  auto ps = all_edge_deletions(g.graph());
  EstimateOptions o;
  o.trials = 5000;
  o.base_seed = 1;
  SensitivityReport r = estimate(greedy_algorithm(), g, ps, o);
  ASSERT_EQ(r.perturbations.size(), 3u);
  for (const auto& row : r.perturbations) EXPECT_LE(row.mean, 1.05);
  EXPECT_GE(r.worst_case, r.average);
}

TEST(Estimate, DeterministicAndIsolated) {
  WeightedGraph g = WeightedGraph::unit(Graph(5, {{0, 1}, {1, 2}, {2, 3}}));
  std::vector<Perturbation> ps{DeleteEdge{{1, 2}}, DeleteVertex{4}};
  EstimateOptions o;
  o.trials = 7;
  SensitivityReport det = estimate(lca_algorithm(2), g, ps, o);
  for (double d : det.perturbations[0].raw) EXPECT_EQ(d, det.perturbations[0].raw[0]);
  SensitivityReport greedy = estimate(greedy_algorithm(), g, ps, o);
  for (double d : greedy.perturbations[1].raw) EXPECT_EQ(d, 0.0);
}

TEST(Estimate, ReproducibleBytes) {
  WeightedGraph g = WeightedGraph::unit(gnp(30, 0.2, 3));
  auto ps = all_vertex_deletions(g.graph());
  EstimateOptions o;
  o.trials = 10;
  o.base_seed = 8;
  EXPECT_EQ(to_json(estimate(greedy_algorithm(), g, ps, o)).dump(),
            to_json(estimate(greedy_algorithm(), g, ps, o)).dump());
}

TEST(LowerBound, LongerCycleRaisesDistance) {
  const Algorithm a = approx_algorithm(desk_params());
  LowerBoundReport short_cycle = randomized_lb_experiment(0.025, a, 300, 4);
  LowerBoundReport long_cycle = randomized_lb_experiment(0.0125, a, 300, 4);
  EXPECT_EQ(long_cycle.cycle_length, 8u);
  EXPECT_GT(long_cycle.report.worst_case, short_cycle.report.worst_case);
}
