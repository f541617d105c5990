#pragma once

#include <span>
#include <vector>

#include "multilevel/context.h"
#include "partition/partition.h"
#include "util/random.h"

namespace mmhp {

// k-way Fiduccia–Mattheyses local search on the (λ−1) objective.
//
// Each pass keeps the best move of every boundary node in a max-heap keyed by
// gain (ties: lower node id, then lower target block), applies the best
// balance-feasible move, locks the node, and updates the gains of neighbors
// whose edges crossed a pin-count threshold. Zero- and negative-gain moves are
// admitted; at the end of the pass the partition is rolled back to the
// earliest prefix with the lowest objective. Returns the total improvement
// (initial minus final objective, never negative).
//
// Moves never empty a block and never push a block above its maximum weight.
// If some block starts out overloaded, a greedy repair step runs first.
Weight fm_refine(Partition& p, std::span<const Weight> max_block_weight, const FmConfig& cfg, Rng& rng);

// Uniform bound (1 + ε)·⌈W/k⌉ for all blocks, `rounds` passes at most.
Weight fm_refine(Partition& p, double epsilon, int rounds, Rng& rng);

// Moves nodes out of overloaded blocks, best gain first, into blocks that
// stay within their bound. Returns true if no block is overloaded afterwards.
bool rebalance(Partition& p, std::span<const Weight> max_block_weight);

}  // namespace mmhp
