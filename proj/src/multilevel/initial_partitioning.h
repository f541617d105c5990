#pragma once

#include <vector>

#include "hgraph/hypergraph.h"
#include "multilevel/context.h"
#include "util/random.h"

namespace mmhp {

struct InitialPartition {
  // One entry per initial node of the input; entries of inactive nodes are
  // kInvalidBlock.
  std::vector<BlockID> blocks;
  // False when no bisection met its bound; the caller decides whether the
  // refinement stage can repair it.
  bool balanced = true;
};

// Maximum weight of a bisection side that receives `side_blocks` of the
// `sub_blocks` final blocks of a sub-hypergraph weighing `sub_weight`. The
// per-level imbalance ε′ is chosen so that compounding it over the remaining
// ⌈log2(sub_blocks)⌉ bisections still meets the final bound
// (1 + ε)·⌈W/k⌉:
//   ε′ = ((1 + ε)·sub_blocks·⌈W/k⌉ / sub_weight)^(1/⌈log2 sub_blocks⌉) − 1.
Weight bisection_side_bound(Weight total_weight, BlockID k, double epsilon, Weight sub_weight,
                            BlockID sub_blocks, BlockID side_blocks);

// Induced sub-hypergraph on `nodes` (current weights), keeping only edges
// with at least two pins inside. Pins are renumbered to positions in `nodes`.
Hypergraph extract_subhypergraph(const Hypergraph& h, const std::vector<NodeID>& nodes);

enum class BisectionAlgorithm { kRandom, kBfsGrowing, kGreedyGrowing };

// One bisection run: the algorithm's raw assignment followed by 2-way FM.
// Side 0 targets sub_weight·k0/(k0+k1).
std::vector<BlockID> run_bisection(const Hypergraph& sub, BisectionAlgorithm algorithm, BlockID k0,
                                   BlockID k1, Weight max0, Weight max1, const Context& ctx, Rng& rng);

// Recursive bisection over the active nodes of h. Every bisection tries each
// pool algorithm ctx.initial_partitioning_runs times and keeps the lowest-cut
// balanced result (least overloaded if none is balanced).
InitialPartition initial_partition(const Hypergraph& h, const Context& ctx, Rng& rng);

}  // namespace mmhp
