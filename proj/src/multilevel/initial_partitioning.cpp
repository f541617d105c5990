#include "multilevel/initial_partitioning.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "multilevel/fm_refiner.h"
#include "partition/partition.h"

namespace mmhp {

Weight bisection_side_bound(Weight total_weight, BlockID k, double epsilon, Weight sub_weight,
                            BlockID sub_blocks, BlockID side_blocks) {
  const Weight final_bound = max_block_weight(total_weight, k, epsilon);
  if (sub_blocks <= 1) return final_bound;
  if (sub_weight <= 0) return final_bound * side_blocks;
  const double avg = static_cast<double>((total_weight + k - 1) / k);
  const double depth = std::ceil(std::log2(static_cast<double>(sub_blocks)));
  double base = (1.0 + epsilon) * static_cast<double>(sub_blocks) * avg / static_cast<double>(sub_weight);
  base = std::max(base, 1.0);
  const double level_epsilon = std::pow(base, 1.0 / depth) - 1.0;
  const double bound = (1.0 + level_epsilon) * static_cast<double>(sub_weight) *
                       static_cast<double>(side_blocks) / static_cast<double>(sub_blocks);
  return static_cast<Weight>(std::floor(bound * (1.0 + 1e-12)));
}

Hypergraph extract_subhypergraph(const Hypergraph& h, const std::vector<NodeID>& nodes) {
  std::vector<NodeID> local(h.initial_num_nodes(), kInvalidNode);
  std::vector<Weight> weights;
  weights.reserve(nodes.size());
  for (NodeID i = 0; i < nodes.size(); ++i) {
    local[nodes[i]] = i;
    weights.push_back(h.node_weight(nodes[i]));
  }
  std::vector<std::vector<NodeID>> edges;
  std::vector<Weight> costs;
  std::vector<char> edge_done(h.num_edges(), 0);
  std::vector<NodeID> pins;
  for (NodeID v : nodes) {
    for (EdgeID e : h.incident_edges(v)) {
      if (edge_done[e]) continue;
      edge_done[e] = 1;
      pins.clear();
      for (NodeID u : h.pins(e)) {
        if (local[u] != kInvalidNode) pins.push_back(local[u]);
      }
      if (pins.size() < 2) continue;
      edges.push_back(pins);
      costs.push_back(h.edge_cost(e));
    }
  }
  return Hypergraph(static_cast<NodeID>(nodes.size()), std::move(edges), std::move(weights), std::move(costs));
}

namespace {

constexpr BisectionAlgorithm kPool[] = {BisectionAlgorithm::kRandom, BisectionAlgorithm::kBfsGrowing,
                                        BisectionAlgorithm::kGreedyGrowing};

double side_target(Weight total, BlockID k0, BlockID k1) {
  return static_cast<double>(total) * static_cast<double>(k0) / static_cast<double>(k0 + k1);
}

void grow_random(const Hypergraph& sub, std::vector<BlockID>& side, Weight max0, double target, Rng& rng) {
  std::vector<NodeID> order(sub.initial_num_nodes());
  for (NodeID v = 0; v < order.size(); ++v) order[v] = v;
  rng.shuffle(order);
  Weight w0 = 0;
  for (NodeID v : order) {
    if (static_cast<double>(w0) >= target) break;
    if (w0 + sub.node_weight(v) > max0) continue;
    side[v] = 0;
    w0 += sub.node_weight(v);
  }
}

void grow_bfs(const Hypergraph& sub, std::vector<BlockID>& side, Weight max0, double target, Rng& rng) {
  const NodeID n = sub.initial_num_nodes();
  std::vector<char> visited(n, 0);
  std::vector<NodeID> order(n);
  for (NodeID v = 0; v < n; ++v) order[v] = v;
  rng.shuffle(order);
  std::size_t next_seed = 0;
  std::deque<NodeID> queue;
  Weight w0 = 0;
  while (static_cast<double>(w0) < target) {
    if (queue.empty()) {
      while (next_seed < n && visited[order[next_seed]]) ++next_seed;
      if (next_seed == n) break;
      visited[order[next_seed]] = 1;
      queue.push_back(order[next_seed]);
    }
    const NodeID u = queue.front();
    queue.pop_front();
    if (w0 + sub.node_weight(u) > max0) continue;
    side[u] = 0;
    w0 += sub.node_weight(u);
    for (EdgeID e : sub.incident_edges(u)) {
      for (NodeID x : sub.pins(e)) {
        if (!visited[x]) {
          visited[x] = 1;
          queue.push_back(x);
        }
      }
    }
  }
}

// Greedy hypergraph growing: repeatedly pulls the node whose move into side 0
// lowers (or least raises) the cut.
void grow_greedy(const Hypergraph& sub, std::vector<BlockID>& side, Weight max0, double target, Rng& rng) {
  const NodeID n = sub.initial_num_nodes();
  if (n < 2) return;
  Partition p(sub, 2, std::vector<BlockID>(n, 1));
  struct Entry {
    Weight gain;
    NodeID node;
    std::uint32_t stamp;
    bool operator<(const Entry& o) const {
      if (gain != o.gain) return gain < o.gain;
      return node > o.node;
    }
  };
  std::priority_queue<Entry> heap;
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<char> rejected(n, 0);
  auto push = [&](NodeID v) {
    ++stamp[v];
    heap.push({-p.move_delta(v, 0), v, stamp[v]});
  };
  std::vector<NodeID> order(n);
  for (NodeID v = 0; v < n; ++v) order[v] = v;
  rng.shuffle(order);
  std::size_t next_seed = 0;

  while (static_cast<double>(p.block_weight(0)) < target && p.block_size(1) > 1) {
    NodeID v = kInvalidNode;
    while (!heap.empty()) {
      const Entry top = heap.top();
      heap.pop();
      if (top.stamp == stamp[top.node] && p.block_of(top.node) == 1 && !rejected[top.node]) {
        v = top.node;
        break;
      }
    }
    if (v == kInvalidNode) {
      while (next_seed < n && (p.block_of(order[next_seed]) == 0 || rejected[order[next_seed]])) ++next_seed;
      if (next_seed == n) break;
      v = order[next_seed];
    }
    if (p.block_weight(0) + sub.node_weight(v) > max0) {
      rejected[v] = 1;
      continue;
    }
    p.move_node(v, 0);
    for (EdgeID e : sub.incident_edges(v)) {
      for (NodeID u : sub.pins(e)) {
        if (p.block_of(u) == 1 && !rejected[u]) push(u);
      }
    }
  }
  side = p.blocks();
}

// Moves the lightest nodes across until each side holds enough nodes for
// its remaining number of blocks.
void enforce_side_sizes(const Hypergraph& sub, std::vector<BlockID>& side, BlockID k0, BlockID k1) {
  const BlockID need[2] = {k0, k1};
  for (BlockID s = 0; s < 2; ++s) {
    const BlockID other = 1 - s;
    NodeID count = static_cast<NodeID>(std::count(side.begin(), side.end(), s));
    NodeID other_count = static_cast<NodeID>(side.size()) - count;
    if (count >= static_cast<NodeID>(need[s])) continue;
    std::vector<NodeID> donors;
    for (NodeID v = 0; v < side.size(); ++v) {
      if (side[v] == other) donors.push_back(v);
    }
    std::sort(donors.begin(), donors.end(), [&](NodeID a, NodeID b) {
      if (sub.node_weight(a) != sub.node_weight(b)) return sub.node_weight(a) < sub.node_weight(b);
      return a < b;
    });
    for (NodeID v : donors) {
      if (count >= static_cast<NodeID>(need[s]) || other_count <= static_cast<NodeID>(need[other])) break;
      side[v] = s;
      ++count;
      --other_count;
    }
  }
}

struct BisectionResult {
  std::vector<BlockID> side;
  Weight cut = 0;
  Weight overload = 0;
  bool sizes_ok = false;
};

BisectionResult evaluate(const Hypergraph& sub, std::vector<BlockID> side, BlockID k0, BlockID k1, Weight max0,
                         Weight max1) {
  BisectionResult r;
  Weight w[2] = {0, 0};
  NodeID c[2] = {0, 0};
  for (NodeID v = 0; v < side.size(); ++v) {
    w[side[v]] += sub.node_weight(v);
    ++c[side[v]];
  }
  r.overload = std::max<Weight>(0, w[0] - max0) + std::max<Weight>(0, w[1] - max1);
  r.sizes_ok = c[0] >= static_cast<NodeID>(k0) && c[1] >= static_cast<NodeID>(k1);
  r.cut = connectivity_metric(sub, side);
  r.side = std::move(side);
  return r;
}

bool better(const BisectionResult& a, const BisectionResult& b) {
  if (a.sizes_ok != b.sizes_ok) return a.sizes_ok;
  if (a.overload != b.overload) return a.overload < b.overload;
  return a.cut < b.cut;
}

void recurse(const Hypergraph& sub, const std::vector<NodeID>& original, BlockID sub_blocks, BlockID first_block,
             Weight total_weight, const Context& ctx, Rng& rng, std::vector<BlockID>& out) {
  const NodeID n = sub.initial_num_nodes();
  if (sub_blocks == 1 || n <= static_cast<NodeID>(sub_blocks)) {
    for (NodeID v = 0; v < n; ++v) {
      out[original[v]] = first_block + (sub_blocks == 1 ? 0 : static_cast<BlockID>(v));
    }
    return;
  }
  const BlockID k0 = sub_blocks / 2;
  const BlockID k1 = sub_blocks - k0;
  const Weight sub_weight = sub.total_weight();
  const Weight max0 = bisection_side_bound(total_weight, ctx.k, ctx.epsilon, sub_weight, sub_blocks, k0);
  const Weight max1 = bisection_side_bound(total_weight, ctx.k, ctx.epsilon, sub_weight, sub_blocks, k1);

  BisectionResult best;
  bool have_best = false;
  for (BisectionAlgorithm algorithm : kPool) {
    for (int run = 0; run < ctx.initial_partitioning_runs; ++run) {
      auto side = run_bisection(sub, algorithm, k0, k1, max0, max1, ctx, rng);
      BisectionResult r = evaluate(sub, std::move(side), k0, k1, max0, max1);
      if (!have_best || better(r, best)) {
        best = std::move(r);
        have_best = true;
      }
    }
  }

  std::vector<NodeID> part[2];
  for (NodeID v = 0; v < n; ++v) part[best.side[v]].push_back(v);
  for (BlockID s = 0; s < 2; ++s) {
    std::vector<NodeID> ids;
    ids.reserve(part[s].size());
    for (NodeID v : part[s]) ids.push_back(original[v]);
    const Hypergraph child = extract_subhypergraph(sub, part[s]);
    recurse(child, ids, s == 0 ? k0 : k1, s == 0 ? first_block : first_block + k0, total_weight, ctx, rng, out);
  }
}

}  // namespace

std::vector<BlockID> run_bisection(const Hypergraph& sub, BisectionAlgorithm algorithm, BlockID k0, BlockID k1,
                                   Weight max0, Weight max1, const Context& ctx, Rng& rng) {
  const NodeID n = sub.initial_num_nodes();
  std::vector<BlockID> side(n, 1);
  const double target = side_target(sub.total_weight(), k0, k1);
  switch (algorithm) {
    case BisectionAlgorithm::kRandom:
      grow_random(sub, side, max0, target, rng);
      break;
    case BisectionAlgorithm::kBfsGrowing:
      grow_bfs(sub, side, max0, target, rng);
      break;
    case BisectionAlgorithm::kGreedyGrowing:
      grow_greedy(sub, side, max0, target, rng);
      break;
  }
  enforce_side_sizes(sub, side, k0, k1);

  Partition p(sub, 2, std::move(side));
  if (p.all_blocks_nonempty()) {
    const Weight bounds[2] = {max0, max1};
    fm_refine(p, bounds, ctx.initial_fm, rng);
  }
  side = p.blocks();
  enforce_side_sizes(sub, side, k0, k1);
  return side;
}

InitialPartition initial_partition(const Hypergraph& h, const Context& ctx, Rng& rng) {
  InitialPartition result;
  result.blocks.assign(h.initial_num_nodes(), kInvalidBlock);
  const std::vector<NodeID> nodes = h.active_nodes();
  const Hypergraph compact = extract_subhypergraph(h, nodes);
  recurse(compact, nodes, ctx.k, 0, h.total_weight(), ctx, rng, result.blocks);

  const Weight bound = max_block_weight(h.total_weight(), ctx.k, ctx.epsilon);
  std::vector<Weight> weight(ctx.k, 0);
  for (NodeID v : nodes) weight[result.blocks[v]] += h.node_weight(v);
  result.balanced = std::all_of(weight.begin(), weight.end(), [&](Weight w) { return w <= bound; });
  return result;
}

}  // namespace mmhp
