#pragma once

#include <cstddef>
#include <vector>

#include "hgraph/hypergraph.h"
#include "partition/partition.h"

namespace mmhp {

struct Individual {
  std::vector<BlockID> blocks;
  Weight objective = 0;
  Signature signature;
  bool balanced = true;
};

// Evaluates objective, signature and balance of an assignment from scratch.
Individual make_individual(const Hypergraph& h, std::vector<BlockID> blocks, BlockID k, double epsilon);

// Σ_e |mult_a(e) − mult_b(e)| over the two cut-edge multisets.
std::size_t distance(const Individual& a, const Individual& b);

// Balanced beats unbalanced, then lower objective.
bool fitter(const Individual& a, const Individual& b);

}  // namespace mmhp
