#include "memetic/operators.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multilevel/multilevel.h"

namespace mmhp {

std::string_view operator_name(Operator op) {
  switch (op) {
    case Operator::kInit:
      return "init";
    case Operator::kC1:
      return "C1";
    case Operator::kC2:
      return "C2";
    case Operator::kC3:
      return "C3";
    case Operator::kM1:
      return "M1";
    case Operator::kM2:
      return "M2";
    case Operator::kM3:
      return "M3";
    case Operator::kM4:
      return "M4";
  }
  return "?";
}

std::size_t tournament(const Population& pop, Rng& rng) {
  const std::size_t n = pop.members.size();
  const std::size_t a = rng.uniform<std::size_t>(0, n - 1);
  std::size_t b = rng.uniform<std::size_t>(0, n - 2);
  if (b >= a) ++b;
  const Individual& x = pop.members[a];
  const Individual& y = pop.members[b];
  if (fitter(x, y)) return a;
  if (fitter(y, x)) return b;
  return rng.flip(0.5) ? a : b;
}

std::pair<std::size_t, std::size_t> tournament_select(const Population& pop, Rng& rng) {
  const std::size_t first = tournament(pop, rng);
  std::size_t second = tournament(pop, rng);
  for (int retry = 0; retry < 5 && second == first; ++retry) second = tournament(pop, rng);
  if (second == first) {
    second = rng.uniform<std::size_t>(0, pop.members.size() - 2);
    if (second >= first) ++second;
  }
  if (fitter(pop.members[second], pop.members[first])) return {second, first};
  return {first, second};
}

namespace {

class QualityEvaluator {
 public:
  explicit QualityEvaluator(const Hypergraph& h) : h_(h), count_(h.num_edges(), 0) {}

  double operator()(std::span<const NodeID> nodes) {
    touched_.clear();
    for (NodeID v : nodes) {
      for (EdgeID e : h_.incident_edges(v)) {
        if (count_[e]++ == 0) touched_.push_back(e);
      }
    }
    if (touched_.empty()) return 0.0;
    double sum = 0.0;
    for (EdgeID e : touched_) {
      const double fraction = static_cast<double>(count_[e]) / static_cast<double>(h_.edge_size(e));
      sum += fraction * fraction;
      count_[e] = 0;
    }
    return sum / static_cast<double>(touched_.size());
  }

 private:
  const Hypergraph& h_;
  std::vector<std::uint32_t> count_;
  std::vector<EdgeID> touched_;
};

Individual finish(Hypergraph& h, const Context& ctx, const PipelineConfig& cfg, Rng& rng) {
  PartitionResult r = run_multilevel(h, ctx, cfg, rng);
  return make_individual(h, std::move(r.blocks), ctx.k, ctx.epsilon);
}

Individual vcycle_with(Hypergraph& h, const Context& ctx, const Individual& parent, Clustering clustering,
                       bool project, Rng& rng) {
  PipelineConfig cfg;
  cfg.clustering = std::move(clustering);
  if (project) cfg.projected = &parent.blocks;
  return finish(h, ctx, cfg, rng);
}

}  // namespace

double block_quality(const Hypergraph& h, std::span<const NodeID> block_nodes) {
  QualityEvaluator eval(h);
  return eval(block_nodes);
}

Clustering greedy_block_clustering(const Hypergraph& h, const std::vector<BlockID>& first,
                                   const std::vector<BlockID>& second, BlockID k) {
  const NodeID n = h.initial_num_nodes();
  const std::vector<BlockID>* parents[2] = {&first, &second};
  struct BlockState {
    std::vector<NodeID> nodes;
    double quality = 0.0;
    bool dirty = false;
  };
  std::vector<BlockState> state[2] = {std::vector<BlockState>(k), std::vector<BlockState>(k)};
  for (int p = 0; p < 2; ++p) {
    for (NodeID v = 0; v < n; ++v) {
      if (h.is_active(v)) state[p][(*parents[p])[v]].nodes.push_back(v);
    }
  }
  QualityEvaluator eval(h);
  for (auto& blocks : state) {
    for (auto& b : blocks) b.quality = eval(b.nodes);
  }

  Clustering c;
  c.policy = ClusterPolicy::kSameClusterOnly;
  c.cluster_of.assign(n, 0);
  std::vector<char> taken(n, 0);
  NodeID remaining = h.current_num_nodes();
  const BlockID limit = 3 * k / 2;
  std::uint32_t selected = 0;
  while (static_cast<BlockID>(selected) < limit && remaining > 0) {
    int best_parent = -1;
    BlockID best_block = kInvalidBlock;
    for (int p = 0; p < 2; ++p) {
      for (BlockID b = 0; b < k; ++b) {
        const BlockState& s = state[p][b];
        if (s.nodes.empty()) continue;
        if (best_parent < 0 || s.quality > state[best_parent][best_block].quality) {
          best_parent = p;
          best_block = b;
        }
      }
    }
    if (best_parent < 0) break;
    ++selected;
    BlockState& chosen = state[best_parent][best_block];
    const int other = 1 - best_parent;
    for (NodeID v : chosen.nodes) {
      c.cluster_of[v] = selected;
      taken[v] = 1;
      state[other][(*parents[other])[v]].dirty = true;
    }
    remaining -= static_cast<NodeID>(chosen.nodes.size());
    chosen.nodes.clear();
    for (auto& s : state[other]) {
      if (!s.dirty) continue;
      s.dirty = false;
      std::erase_if(s.nodes, [&](NodeID v) { return taken[v] != 0; });
      s.quality = eval(s.nodes);
    }
  }
  return c;
}

Clustering build_mutation_clusters(const Hypergraph& h, const std::vector<BlockID>& blocks, ClusterPolicy policy) {
  const NodeID n = h.initial_num_nodes();
  std::vector<NodeID> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeID v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  // Joining consecutive same-block pins of an edge links every pair of them.
  std::vector<NodeID> last_in_block;
  std::vector<BlockID> seen_blocks;
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    seen_blocks.clear();
    last_in_block.clear();
    for (NodeID v : h.pins(e)) {
      const BlockID b = blocks[v];
      auto it = std::find(seen_blocks.begin(), seen_blocks.end(), b);
      if (it == seen_blocks.end()) {
        seen_blocks.push_back(b);
        last_in_block.push_back(v);
      } else {
        const NodeID u = last_in_block[static_cast<std::size_t>(it - seen_blocks.begin())];
        const NodeID ru = find(u);
        const NodeID rv = find(v);
        if (ru != rv) parent[rv] = ru;
      }
    }
  }
  std::vector<char> qualifies(n, 0);
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    const auto pins = h.pins(e);
    const BlockID b = blocks[pins[0]];
    const bool internal = std::all_of(pins.begin(), pins.end(), [&](NodeID v) { return blocks[v] == b; });
    if (internal) qualifies[find(pins[0])] = 1;
  }
  Clustering c;
  c.policy = policy;
  c.cluster_of.assign(n, 0);
  for (NodeID v = 0; v < n; ++v) {
    if (h.is_active(v) && qualifies[find(v)]) c.cluster_of[v] = static_cast<std::uint32_t>(blocks[v] + 1);
  }
  return c;
}

Individual combine_c1(Hypergraph& h, const Context& ctx, const Individual& first, const Individual& second,
                      Rng& rng) {
  Clustering c;
  c.policy = ClusterPolicy::kSameClusterOnly;
  c.cluster_of.assign(h.initial_num_nodes(), 0);
  for (NodeID v = 0; v < h.initial_num_nodes(); ++v) {
    if (!h.is_active(v)) continue;
    c.cluster_of[v] = static_cast<std::uint32_t>(first.blocks[v] * ctx.k + second.blocks[v] + 1);
  }
  return vcycle_with(h, ctx, first, std::move(c), true, rng);
}

Individual combine_c2(Hypergraph& h, const Context& ctx, const Population& pop, double gamma, Rng& rng) {
  const std::size_t size = pop.members.size();
  const auto p = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(size)))));
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitter(pop.members[a], pop.members[b]); });
  std::vector<std::uint32_t> frequency(h.num_edges(), 0);
  for (std::size_t i = 0; i < std::min(p, size); ++i) {
    for (const auto& [e, mult] : pop.members[order[i]].signature) ++frequency[e];
  }
  PipelineConfig cfg;
  cfg.clustering = Clustering::unrestricted(h.initial_num_nodes());
  cfg.rating = ContractionRating::frequency(std::move(frequency), gamma);
  return finish(h, ctx, cfg, rng);
}

Individual combine_c3(Hypergraph& h, const Context& ctx, const Individual& first, const Individual& second,
                      Rng& rng) {
  PipelineConfig cfg;
  cfg.clustering = greedy_block_clustering(h, first.blocks, second.blocks, ctx.k);
  cfg.respect_kappa = false;
  cfg.stop_at_tk = false;
  return finish(h, ctx, cfg, rng);
}

Individual mutate_m1(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng) {
  return vcycle_with(h, ctx, parent, block_clustering(parent.blocks, ClusterPolicy::kSameClusterOnly), true, rng);
}

Individual mutate_m2(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng) {
  return vcycle_with(h, ctx, parent, block_clustering(parent.blocks, ClusterPolicy::kSameClusterOnly), false, rng);
}

Individual mutate_m3(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng) {
  return vcycle_with(h, ctx, parent, build_mutation_clusters(h, parent.blocks, ClusterPolicy::kSameClusterOnly),
                     true, rng);
}

Individual mutate_m4(Hypergraph& h, const Context& ctx, const Individual& parent, Rng& rng) {
  return vcycle_with(h, ctx, parent, build_mutation_clusters(h, parent.blocks, ClusterPolicy::kSameClusterOrZero),
                     false, rng);
}

}  // namespace mmhp
