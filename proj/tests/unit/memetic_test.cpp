#include <cmath>
#include <random>
#include <set>

#include "gmock/gmock.h"
#include "memetic/evolution.h"
#include "memetic/individual.h"
#include "memetic/operators.h"
#include "multilevel/multilevel.h"
#include "support/oracles.h"

using ::testing::DoubleEq;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::Eq;
using ::testing::Gt;
using ::testing::Le;
using ::testing::UnorderedElementsAre;

namespace mmhp {
namespace {

Context context(BlockID k, double epsilon) {
  Context ctx;
  ctx.k = k;
  ctx.epsilon = epsilon;
  return ctx;
}

Individual scored(Weight objective, Signature sig = {}) {
  Individual ind;
  ind.objective = objective;
  ind.signature = std::move(sig);
  return ind;
}

std::vector<Weight> objectives(const Population& pop) {
  std::vector<Weight> out;
  for (const auto& m : pop.members) out.push_back(m.objective);
  return out;
}

TEST(APopulationSize, UsesFifteenPercentOfBudget) {
  EXPECT_THAT(population_size_for(7200, 100), Eq(11u));
}

TEST(APopulationSize, IsClampedToThreeAndFifty) {
  EXPECT_THAT(population_size_for(7200, 1e6), Eq(3u));
  EXPECT_THAT(population_size_for(7200, 1e-3), Eq(50u));
}

class AnH0Population : public ::testing::Test {
 protected:
  Hypergraph h = oracle::h0();
  Individual halves = make_individual(h, {0, 0, 1, 1}, 2, 0.0);
  Individual crossed = make_individual(h, {0, 1, 0, 1}, 2, 0.0);
};

TEST_F(AnH0Population, MeasuresDistanceBetweenCutMultisets) {
  EXPECT_THAT(halves.objective, Eq(2));
  EXPECT_THAT(crossed.objective, Eq(3));
  EXPECT_THAT(distance(halves, crossed), Eq(1u));
  EXPECT_THAT(distance(halves, halves), Eq(0u));
}

TEST_F(AnH0Population, CountsMultiplicityDifferences) {
  EXPECT_THAT(distance(scored(0, {{0, 2}}), scored(0, {{0, 1}})), Eq(1u));
  EXPECT_THAT(distance(scored(0, {{0, 2}, {3, 1}}), scored(0, {{1, 1}})), Eq(4u));
}

TEST_F(AnH0Population, RanksBalancedBeforeObjective) {
  Individual unbalanced = scored(1);
  unbalanced.balanced = false;
  EXPECT_TRUE(fitter(halves, crossed));
  EXPECT_TRUE(fitter(halves, unbalanced));
  EXPECT_FALSE(fitter(unbalanced, crossed));
}

TEST_F(AnH0Population, BuildsMutationClustersFromFullyInternalEdges) {
  const Clustering c = build_mutation_clusters(h, {0, 0, 1, 1}, ClusterPolicy::kSameClusterOnly);
  EXPECT_THAT(c.cluster_of, ElementsAre(1u, 1u, 0u, 0u));
}

TEST_F(AnH0Population, PicksHighestQualityBlockFirst) {
  const Clustering c = greedy_block_clustering(h, {0, 0, 1, 1}, {0, 1, 0, 1}, 2);
  EXPECT_THAT(c.policy, Eq(ClusterPolicy::kSameClusterOnly));
  EXPECT_THAT(c.cluster_of, ElementsAre(2u, 2u, 1u, 1u));
}

TEST_F(AnH0Population, RecombinesDisagreeingParentsIntoOptimum) {
  Rng rng(1);
  const Individual child = combine_c1(h, context(2, 0.0), halves, crossed, rng);
  EXPECT_THAT(child.objective, Eq(2));
  EXPECT_TRUE(child.balanced);
  EXPECT_TRUE(h == oracle::h0());
}

TEST_F(AnH0Population, KeepsOptimalParentUnderEveryMutation) {
  Rng rng(2);
  const Context ctx = context(2, 0.0);
  EXPECT_THAT(mutate_m1(h, ctx, halves, rng).objective, Eq(2));
  EXPECT_THAT(mutate_m2(h, ctx, halves, rng).objective, Eq(2));
  EXPECT_THAT(mutate_m3(h, ctx, halves, rng).objective, Eq(2));
  EXPECT_THAT(mutate_m4(h, ctx, halves, rng).objective, Eq(2));
}

TEST(ABlockQuality, OrdersIllustrativeBlocks) {
  // V1 holds 1/4 and 3/4 of its edges, V2 1/2 and 1/2, V3 1/2 and 3/4.
  const Hypergraph g1(7, {{0, 1, 2, 3}, {0, 4, 5, 6}});
  const Hypergraph g2(4, {{0, 2}, {1, 3}});
  const Hypergraph g3(5, {{0, 3}, {0, 1, 2, 4}});
  const std::vector<NodeID> v1{0, 4, 5};
  const std::vector<NodeID> v2{0, 1};
  const std::vector<NodeID> v3{0, 1, 2};
  EXPECT_THAT(block_quality(g1, v1), DoubleNear(0.3125, 1e-12));
  EXPECT_THAT(block_quality(g2, v2), DoubleNear(0.25, 1e-12));
  EXPECT_THAT(block_quality(g3, v3), DoubleNear(0.40625, 1e-12));
}

TEST(ABlockQuality, IsOneForClosedBlockAndZeroWithoutEdges) {
  const Hypergraph g(4, {{0, 1}, {2, 3}});
  const std::vector<NodeID> closed{0, 1};
  const std::vector<NodeID> isolated{0};
  const Hypergraph lonely(2, {{0, 1}});
  EXPECT_THAT(block_quality(g, closed), DoubleEq(1.0));
  EXPECT_THAT(block_quality(Hypergraph(3, {{0, 1}}), std::vector<NodeID>{2}), DoubleEq(0.0));
  EXPECT_THAT(block_quality(lonely, isolated), DoubleEq(0.25));
}

TEST(AMutationClustering, LeavesIsolatedNodesInClusterZero) {
  const Hypergraph g(3, {{0, 1}, {1, 2}});
  const Clustering c = build_mutation_clusters(g, {0, 0, 1}, ClusterPolicy::kSameClusterOrZero);
  EXPECT_THAT(c.cluster_of, ElementsAre(1u, 1u, 0u));
  EXPECT_THAT(c.policy, Eq(ClusterPolicy::kSameClusterOrZero));
}

TEST(AMutationClustering, MatchesBlockLabelsWhenEveryBlockIsClosedAndConnected) {
  const Hypergraph g(6, {{0, 1, 2}, {3, 4}, {4, 5}, {2, 3}});
  const Clustering c = build_mutation_clusters(g, {0, 0, 0, 1, 1, 1}, ClusterPolicy::kSameClusterOnly);
  EXPECT_THAT(c.cluster_of, Eq(block_clustering({0, 0, 0, 1, 1, 1}, ClusterPolicy::kSameClusterOnly).cluster_of));
}

TEST(ATournament, ReturnsBothMembersOfPairFitterFirst) {
  Population pop{{scored(7), scored(3)}};
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto [a, b] = tournament_select(pop, rng);
    EXPECT_THAT(a, Eq(1u));
    EXPECT_THAT(b, Eq(0u));
  }
}

TEST(ATournament, FavorsFitterMembers) {
  Population pop;
  for (Weight w = 0; w < 10; ++w) pop.members.push_back(scored(w));
  Rng rng(6);
  std::vector<int> wins(10, 0);
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) ++wins[tournament(pop, rng)];
  // The best member wins whenever it is drawn: probability 2/10.
  EXPECT_THAT(wins[0] / static_cast<double>(trials), DoubleNear(0.2, 0.02));
  EXPECT_THAT(wins[9], Eq(0));
  EXPECT_THAT(wins[0], Gt(wins[5]));
}

TEST(AReplacement, EvictsClosestNotFitterMember) {
  Population pop{{scored(10, {{0, 5}}), scored(12, {{0, 3}}), scored(14, {{0, 9}})}};
  EXPECT_TRUE(replace(pop, scored(11)));
  EXPECT_THAT(objectives(pop), UnorderedElementsAre(10, 11, 14));
}

TEST(AReplacement, DiscardsOffspringWorseThanEveryMember) {
  Population pop{{scored(10, {{0, 1}}), scored(12, {{1, 1}})}};
  EXPECT_FALSE(replace(pop, scored(13)));
  EXPECT_THAT(objectives(pop), ElementsAre(10, 12));
}

TEST(AReplacement, SwapsIdenticalOffspringForItsTwin) {
  Population pop{{scored(10, {{0, 1}}), scored(12, {{1, 1}})}};
  const Population before = pop;
  replace(pop, scored(12, {{1, 1}}));
  EXPECT_THAT(objectives(pop), ElementsAre(10, 12));
  EXPECT_THAT(pop.members[1].signature, Eq(before.members[1].signature));
}

TEST(AReplacement, DiscardsUnbalancedOffspring) {
  Population pop{{scored(10, {{0, 1}}), scored(12, {{1, 1}})}};
  Individual child = scored(1);
  child.balanced = false;
  EXPECT_FALSE(replace(pop, child));
}

TEST(AReplacement, BreaksDistanceTiesTowardHigherObjective) {
  Population pop{{scored(12, {{0, 1}}), scored(14, {{1, 1}})}};
  EXPECT_TRUE(replace(pop, scored(11, {{2, 1}})));
  EXPECT_THAT(objectives(pop), UnorderedElementsAre(12, 11));
}

TEST(ACombineSchedule, MovesC3WeightToOthersForBisection) {
  const OperatorConfig cfg;
  const auto w = effective_combine_weights(cfg, 2);
  EXPECT_THAT(w[0], DoubleNear(0.4 + 0.4 * 2.0 / 3.0, 1e-12));
  EXPECT_THAT(w[1], DoubleNear(0.2 + 0.4 / 3.0, 1e-12));
  EXPECT_THAT(w[2], DoubleEq(0.0));
  EXPECT_THAT(effective_combine_weights(cfg, 4), Eq(cfg.combine));
}

TEST(ACombineSchedule, ProvidesNamedPresets) {
  for (auto name : OperatorConfig::preset_names()) {
    ASSERT_TRUE(OperatorConfig::preset(name).has_value()) << name;
    EXPECT_TRUE(OperatorConfig::preset(name)->valid()) << name;
  }
  EXPECT_FALSE(OperatorConfig::preset("nope").has_value());
  const OperatorConfig e = *OperatorConfig::preset("kahypar-e");
  EXPECT_THAT(e.combine[2], DoubleEq(0.0));
  EXPECT_THAT(e.mutate[2] + e.mutate[3], DoubleEq(0.0));
}

TEST(AnInitialPopulation, StaysDistinctWhenEveryBlockIsFull) {
  // ε = 0 with 12 nodes in 4 blocks: every block sits at the bound, so only
  // swaps can perturb a duplicate.
  std::mt19937_64 gen(31);
  Hypergraph h = oracle::random_hypergraph(gen, {.min_nodes = 12, .max_nodes = 12, .min_edges = 10,
                                                 .max_edges = 10, .max_edge_size = 3});
  Rng rng(1);
  const Population pop = init_population(h, context(4, 0.0), 10, rng);
  EXPECT_THAT(pop.members.size(), Eq(10u));
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    EXPECT_TRUE(pop.members[i].balanced);
    for (std::size_t j = i + 1; j < pop.members.size(); ++j) {
      EXPECT_THAT(distance(pop.members[i], pop.members[j]), Gt(0u)) << i << ", " << j;
    }
  }
}

TEST(AnInitialPopulation, StopsEarlyWhenNoDistinctPartitionExists) {
  // Two isolated nodes: every bisection has an empty signature.
  Hypergraph h(2, {{0}, {1}});
  Rng rng(1);
  const Population pop = init_population(h, context(2, 0.0), 5, rng);
  EXPECT_THAT(pop.members.size(), Eq(1u));
}

Hypergraph medium_instance(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return oracle::random_hypergraph(gen, {.min_nodes = 300, .max_nodes = 300, .min_edges = 500, .max_edges = 500,
                                         .max_edge_size = 5});
}

EvolutionConfig generations(std::uint64_t g, OperatorConfig ops = {}) {
  EvolutionConfig cfg;
  cfg.generations = g;
  cfg.operators = ops;
  return cfg;
}

TEST(AnEvolution, IsDeterministicInGenerationMode) {
  Hypergraph h = medium_instance(1);
  std::vector<ProgressEvent> first_events;
  std::vector<ProgressEvent> second_events;
  Rng a(9);
  Rng b(9);
  const auto first = evolve(h, context(4, 0.03), generations(15), a,
                            [&](const ProgressEvent& e) { first_events.push_back(e); });
  const auto second = evolve(h, context(4, 0.03), generations(15), b,
                             [&](const ProgressEvent& e) { second_events.push_back(e); });
  EXPECT_THAT(first.best.blocks, Eq(second.best.blocks));
  EXPECT_THAT(first.invocations, Eq(second.invocations));
  ASSERT_THAT(first_events.size(), Eq(second_events.size()));
  for (std::size_t i = 0; i < first_events.size(); ++i) {
    EXPECT_THAT(first_events[i].elapsed, DoubleEq(second_events[i].elapsed));
    EXPECT_THAT(first_events[i].best, Eq(second_events[i].best));
  }
}

TEST(AnEvolution, ReportsMonotoneBestAndFinalMatch) {
  Hypergraph h = medium_instance(2);
  std::vector<ProgressEvent> events;
  Rng rng(3);
  const auto r = evolve(h, context(4, 0.03), generations(20), rng,
                        [&](const ProgressEvent& e) { events.push_back(e); });
  ASSERT_FALSE(events.empty());
  for (std::size_t i = 1; i < events.size(); ++i) {
    EXPECT_THAT(events[i].best, Le(events[i - 1].best));
    EXPECT_THAT(events[i - 1].elapsed, Le(events[i].elapsed));
  }
  EXPECT_THAT(events.back().best, Eq(r.best.objective));
  EXPECT_THAT(r.generations, Eq(20u));
  EXPECT_TRUE(oracle::feasible(h, r.best.blocks, 4, 0.03));
  EXPECT_THAT(r.best.objective, Eq(oracle::km1(h, r.best.blocks)));
}

TEST(AnEvolution, NeverInvokesC3ForBisection) {
  Hypergraph h = medium_instance(3);
  Rng rng(4);
  const auto r = evolve(h, context(2, 0.03), generations(40), rng);
  EXPECT_THAT(r.invocations[static_cast<int>(Operator::kC3)], Eq(0u));
}

TEST(AnEvolution, UsesOnlyBaselineOperatorsUnderKahyparEPreset) {
  Hypergraph h = medium_instance(4);
  Rng rng(5);
  const auto r = evolve(h, context(4, 0.03), generations(40, *OperatorConfig::preset("kahypar-e")), rng);
  EXPECT_THAT(r.invocations[static_cast<int>(Operator::kC3)], Eq(0u));
  EXPECT_THAT(r.invocations[static_cast<int>(Operator::kM3)], Eq(0u));
  EXPECT_THAT(r.invocations[static_cast<int>(Operator::kM4)], Eq(0u));
  EXPECT_THAT(r.invocations[static_cast<int>(Operator::kC1)] + r.invocations[static_cast<int>(Operator::kC2)],
              Gt(0u));
}

TEST(AnEvolution, ReachesOptimumOnTinyInstances) {
  std::mt19937_64 gen(21);
  int checked = 0;
  for (int i = 0; i < 12; ++i) {
    Hypergraph h = oracle::random_hypergraph(gen, {.min_nodes = 7, .max_nodes = 9, .min_edges = 6,
                                                   .max_edges = 12, .max_edge_size = 4});
    const BlockID k = i % 2 == 0 ? 2 : 3;
    const auto optimum = oracle::brute_force_optimum(h, k, 0.2);
    if (!optimum) continue;
    Rng rng(i);
    const auto r = evolve(h, context(k, 0.2), generations(100), rng);
    EXPECT_THAT(r.best.objective, Eq(optimum->cost)) << "instance " << i;
    ++checked;
  }
  EXPECT_THAT(checked, Gt(6));
}

}  // namespace
}  // namespace mmhp
