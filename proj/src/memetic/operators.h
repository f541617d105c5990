#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hgraph/hypergraph.h"
#include "memetic/individual.h"
#include "multilevel/coarsening.h"
#include "multilevel/context.h"
#include "util/random.h"

namespace mmhp {

enum class Operator { kInit, kC1, kC2, kC3, kM1, kM2, kM3, kM4 };
inline constexpr int kNumOperators = 8;
std::string_view operator_name(Operator op);

struct Population {
  std::vector<Individual> members;
};

// Index of the winner of one two-way tournament between distinct members.
std::size_t tournament(const Population& pop, Rng& rng);
// Two tournament winners, fitter first. Requires at least two members.
std::pair<std::size_t, std::size_t> tournament_select(const Population& pop, Rng& rng);

// Mean of (|pins(e) ∩ V| / |pins(e)|)² over all edges incident to V. Returns
// 0 if V touches no edge.
double block_quality(const Hypergraph& h, std::span<const NodeID> block_nodes);

// Greedy block selection for C3: the best remaining block of either parent
// becomes a fresh cluster, its nodes leave all other blocks, and selection
// stops after ⌊3k/2⌋ blocks or once every node is taken. Unselected nodes
// keep label 0. Equal qualities go to the lower (parent, block) pair.
Clustering greedy_block_clustering(const Hypergraph& h, const std::vector<BlockID>& first,
                                   const std::vector<BlockID>& second, BlockID k);

// Labels for M3/M4: inside each block, components are formed through edges
// with at least two pins in the block. Components containing every pin of
// some edge get label b + 1, all others 0.
Clustering build_mutation_clusters(const Hypergraph& h, const std::vector<BlockID>& blocks,
                                   ClusterPolicy policy);

// h must be fully uncoarsened; it is restored before each call returns.
Individual combine_c1(Hypergraph& h, const Context& ctx, const Individual& first, const Individual& second,
                      Rng& rng);
Individual combine_c2(Hypergraph& h, const Context& ctx, const Population& pop, double gamma, Rng& rng);
Individual combine_c3(Hypergraph& h, const Context& ctx, const Individual& first, const Individual& second,
                      Rng& rng);
Individual mutate_m1(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng);
Individual mutate_m2(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng);
Individual mutate_m3(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng);
Individual mutate_m4(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng);

}  // namespace mmhp
