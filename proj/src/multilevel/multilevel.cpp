#include "multilevel/multilevel.h"

#include "multilevel/fm_refiner.h"
#include "multilevel/initial_partitioning.h"
#include "partition/partition.h"

namespace mmhp {

PartitionResult run_multilevel(Hypergraph& h, const Context& ctx, const PipelineConfig& cfg, Rng& rng) {
  if (h.current_num_nodes() < static_cast<NodeID>(ctx.k)) {
    throw PartitionError("fewer nodes than blocks");
  }
  CoarseningConfig ccfg = CoarseningConfig::standard(h, ctx);
  ccfg.respect_kappa = cfg.respect_kappa;
  ccfg.stop_at_tk = cfg.stop_at_tk;
  CoarseningHierarchy hierarchy = coarsen(h, ccfg, cfg.clustering, cfg.rating, rng);

  std::vector<BlockID> start;
  if (cfg.projected != nullptr) {
    start = *cfg.projected;
  } else {
    start = initial_partition(h, ctx, rng).blocks;
  }

  const std::vector<Weight> bounds(ctx.k, max_block_weight(h.total_weight(), ctx.k, ctx.epsilon));
  Partition p(h, ctx.k, std::move(start));
  fm_refine(p, bounds, ctx.fm, rng);

  double last_refined = static_cast<double>(h.current_num_nodes());
  for (auto it = hierarchy.mementos.rbegin(); it != hierarchy.mementos.rend(); ++it) {
    h.uncontract(*it);
    p.restore_uncontracted(*it);
    const bool finest = std::next(it) == hierarchy.mementos.rend();
    const auto active = static_cast<double>(h.current_num_nodes());
    if (finest || active >= last_refined * ctx.refinement_growth) {
      fm_refine(p, bounds, ctx.fm, rng);
      last_refined = active;
    }
  }

  PartitionResult result;
  result.km1 = p.km1();
  result.balanced = is_balanced(p, ctx.epsilon);
  result.blocks = p.blocks();
  return result;
}

PartitionResult partition_single(Hypergraph& h, const Context& ctx, Rng& rng) {
  PipelineConfig cfg;
  cfg.clustering = Clustering::unrestricted(h.initial_num_nodes());
  return run_multilevel(h, ctx, cfg, rng);
}

Clustering block_clustering(const std::vector<BlockID>& blocks, ClusterPolicy policy) {
  Clustering c;
  c.policy = policy;
  c.cluster_of.resize(blocks.size());
  for (std::size_t v = 0; v < blocks.size(); ++v) c.cluster_of[v] = static_cast<std::uint32_t>(blocks[v] + 1);
  return c;
}

PartitionResult vcycle(Hypergraph& h, const Context& ctx, const std::vector<BlockID>& blocks, Rng& rng) {
  PipelineConfig cfg;
  cfg.clustering = block_clustering(blocks, ClusterPolicy::kSameClusterOnly);
  cfg.projected = &blocks;
  return run_multilevel(h, ctx, cfg, rng);
}

}  // namespace mmhp
