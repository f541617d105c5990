#pragma once

#include <vector>

#include "hgraph/hypergraph.h"
#include "multilevel/coarsening.h"
#include "multilevel/context.h"
#include "util/random.h"

namespace mmhp {

struct PartitionResult {
  std::vector<BlockID> blocks;
  Weight km1 = 0;
  bool balanced = true;
};

// One multilevel run. Every operator is an instance of this with a different
// clustering, rating and coarsening stop rule.
struct PipelineConfig {
  Clustering clustering;
  ContractionRating rating = ContractionRating::heavy_edge();
  bool respect_kappa = true;
  bool stop_at_tk = true;
  // If non-null, this assignment is projected onto the coarsest level instead
  // of computing an initial partition. Only valid when the clustering never
  // joins nodes of different blocks of it.
  const std::vector<BlockID>* projected = nullptr;
};

// Coarsens h, partitions or projects, then uncoarsens with k-way FM. FM runs
// on the coarsest level, each time the active node count has grown by
// ctx.refinement_growth, and on the input level. h is restored on return.
PartitionResult run_multilevel(Hypergraph& h, const Context& ctx, const PipelineConfig& cfg, Rng& rng);

// Unrestricted heavy-edge coarsening, recursive bisection, FM uncoarsening.
PartitionResult partition_single(Hypergraph& h, const Context& ctx, Rng& rng);

// Re-coarsens inside the blocks of `blocks` and refines the projected
// partition. The result is never worse than the input when the input is
// balanced.
PartitionResult vcycle(Hypergraph& h, const Context& ctx, const std::vector<BlockID>& blocks, Rng& rng);

// Clustering whose labels are block ids shifted by one.
Clustering block_clustering(const std::vector<BlockID>& blocks, ClusterPolicy policy);

}  // namespace mmhp
