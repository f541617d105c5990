#include "multilevel/fm_refiner.h"

#include <algorithm>
#include <queue>

namespace mmhp {
namespace {

struct Move {
  NodeID node;
  BlockID from;
  BlockID to;
};

struct HeapEntry {
  Gain gain;
  NodeID node;
  BlockID target;
  std::uint32_t stamp;
};

// Max-heap order: higher gain first, then lower node id, then lower target.
struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    if (a.node != b.node) return a.node > b.node;
    return a.target > b.target;
  }
};

struct Candidate {
  BlockID target = kInvalidBlock;
  Gain gain = 0;
};

class KWayFm {
 public:
  KWayFm(Partition& p, std::span<const Weight> max_weight, const FmConfig& cfg)
      : p_(p),
        h_(p.hypergraph()),
        max_weight_(max_weight),
        cfg_(cfg),
        connected_cost_(p.k(), 0),
        block_touched_(p.k(), 0),
        stamp_(h_.initial_num_nodes(), 0),
        locked_(h_.initial_num_nodes(), 0),
        update_mark_(h_.initial_num_nodes(), 0) {}

  Weight run(Rng& rng) {
    Weight total = 0;
    for (int round = 0; round < cfg_.max_rounds; ++round) {
      const Weight improvement = pass(rng);
      total += improvement;
      if (improvement <= 0) break;
    }
    return total;
  }

 private:
  bool is_boundary(NodeID v) const {
    for (EdgeID e : h_.incident_edges(v)) {
      if (p_.connectivity(e) > 1) return true;
    }
    return false;
  }

  // Best balance-feasible move of v among blocks adjacent to it.
  Candidate best_move(NodeID v) {
    const BlockID from = p_.block_of(v);
    if (p_.block_size(from) <= 1) return {};
    Gain benefit = 0;
    Gain incident_cost = 0;
    touched_.clear();
    for (EdgeID e : h_.incident_edges(v)) {
      const Weight c = h_.edge_cost(e);
      incident_cost += c;
      p_.pin_counts().for_each_block(e, [&](BlockID b, std::uint32_t count) {
        if (b == from) {
          if (count == 1) benefit += c;
          return;
        }
        if (!block_touched_[b]) {
          block_touched_[b] = 1;
          touched_.push_back(b);
        }
        connected_cost_[b] += c;
      });
    }
    Candidate best;
    const Weight w = h_.node_weight(v);
    for (BlockID b : touched_) {
      const Gain gain = benefit - incident_cost + connected_cost_[b];
      connected_cost_[b] = 0;
      block_touched_[b] = 0;
      if (p_.block_weight(b) + w > max_weight_[b]) continue;
      if (best.target == kInvalidBlock || gain > best.gain || (gain == best.gain && b < best.target)) {
        best = {b, gain};
      }
    }
    return best;
  }

  void push_best(NodeID v) {
    const Candidate c = best_move(v);
    ++stamp_[v];
    if (c.target != kInvalidBlock) heap_.push({c.gain, v, c.target, stamp_[v]});
  }

  Weight pass(Rng& rng) {
    heap_ = {};
    moves_.clear();
    ++epoch_;
    std::vector<NodeID> nodes = h_.active_nodes();
    rng.shuffle(nodes);
    for (NodeID v : nodes) {
      if (is_boundary(v)) push_best(v);
    }

    const Weight start = p_.km1();
    Weight current = start;
    Weight best = start;
    std::size_t best_prefix = 0;
    std::size_t fruitless = 0;

    while (!heap_.empty()) {
      const HeapEntry top = heap_.top();
      heap_.pop();
      const NodeID v = top.node;
      if (locked_[v] == epoch_ || top.stamp != stamp_[v]) continue;
      const BlockID from = p_.block_of(v);
      if (p_.block_weight(top.target) + h_.node_weight(v) > max_weight_[top.target] ||
          p_.block_size(from) <= 1) {
        push_best(v);
        continue;
      }

      current += p_.move_node(v, top.target);
      locked_[v] = epoch_;
      moves_.push_back({v, from, top.target});
      if (current < best) {
        best = current;
        best_prefix = moves_.size();
        fruitless = 0;
      } else if (++fruitless >= cfg_.max_fruitless_moves) {
        break;
      }
      update_neighbors(v, from, top.target);
    }

    while (moves_.size() > best_prefix) {
      const Move m = moves_.back();
      moves_.pop_back();
      p_.move_node(m.node, m.from);
    }
    return start - best;
  }

  void update_neighbors(NodeID v, BlockID from, BlockID to) {
    ++update_epoch_;
    pending_.clear();
    for (EdgeID e : h_.incident_edges(v)) {
      const auto from_count = p_.pins_in_block(e, from);
      const auto to_count = p_.pins_in_block(e, to);
      if (from_count > 1 && (to_count < 1 || to_count > 2)) continue;
      for (NodeID u : h_.pins(e)) {
        if (u == v || locked_[u] == epoch_ || update_mark_[u] == update_epoch_) continue;
        update_mark_[u] = update_epoch_;
        pending_.push_back(u);
      }
    }
    for (NodeID u : pending_) push_best(u);
  }

  Partition& p_;
  const Hypergraph& h_;
  std::span<const Weight> max_weight_;
  const FmConfig& cfg_;

  std::vector<Weight> connected_cost_;
  std::vector<char> block_touched_;
  std::vector<BlockID> touched_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::size_t> locked_;
  std::vector<std::size_t> update_mark_;
  std::vector<NodeID> pending_;
  std::vector<Move> moves_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap_;
  std::size_t epoch_ = 0;
  std::size_t update_epoch_ = 0;
};

}  // namespace

bool rebalance(Partition& p, std::span<const Weight> max_block_weight) {
  const Hypergraph& h = p.hypergraph();
  const BlockID k = p.k();
  auto overloaded = [&](BlockID b) { return p.block_weight(b) > max_block_weight[b]; };

  for (BlockID b = 0; b < k; ++b) {
    if (!overloaded(b)) continue;
    struct Option {
      Weight delta;
      Weight weight;
      NodeID node;
    };
    std::vector<Option> options;
    for (NodeID v = 0; v < h.initial_num_nodes(); ++v) {
      if (!h.is_active(v) || p.block_of(v) != b) continue;
      Weight best_delta = 0;
      bool found = false;
      for (BlockID t = 0; t < k; ++t) {
        if (t == b || p.block_weight(t) + h.node_weight(v) > max_block_weight[t]) continue;
        const Weight d = p.move_delta(v, t);
        if (!found || d < best_delta) {
          best_delta = d;
          found = true;
        }
      }
      if (found) options.push_back({best_delta, h.node_weight(v), v});
    }
    std::sort(options.begin(), options.end(), [](const Option& a, const Option& c) {
      if (a.delta != c.delta) return a.delta < c.delta;
      if (a.weight != c.weight) return a.weight > c.weight;
      return a.node < c.node;
    });
    for (const Option& o : options) {
      if (!overloaded(b)) break;
      if (p.block_size(b) <= 1) break;
      BlockID target = kInvalidBlock;
      Weight best_delta = 0;
      for (BlockID t = 0; t < k; ++t) {
        if (t == b || p.block_weight(t) + h.node_weight(o.node) > max_block_weight[t]) continue;
        const Weight d = p.move_delta(o.node, t);
        if (target == kInvalidBlock || d < best_delta) {
          target = t;
          best_delta = d;
        }
      }
      if (target != kInvalidBlock) p.move_node(o.node, target);
    }
  }
  for (BlockID b = 0; b < k; ++b) {
    if (overloaded(b)) return false;
  }
  return true;
}

Weight fm_refine(Partition& p, std::span<const Weight> max_block_weight, const FmConfig& cfg, Rng& rng) {
  const Weight before = p.km1();
  // Repairing an overloaded input may raise the objective; the result is the
  // net change clamped at zero.
  rebalance(p, max_block_weight);
  KWayFm fm(p, max_block_weight, cfg);
  fm.run(rng);
  return std::max<Weight>(0, before - p.km1());
}

Weight fm_refine(Partition& p, double epsilon, int rounds, Rng& rng) {
  const std::vector<Weight> bounds(p.k(), max_block_weight(p.hypergraph().total_weight(), p.k(), epsilon));
  FmConfig cfg;
  cfg.max_rounds = rounds;
  return fm_refine(p, bounds, cfg, rng);
}

}  // namespace mmhp
