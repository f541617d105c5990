#include "partition/partition.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmhp {

PinCountTable::PinCountTable(EdgeID num_edges, BlockID k) : k_(k), lambda_(num_edges, 0) {
  if (dense()) {
    dense_.assign(static_cast<std::size_t>(num_edges) * k, 0);
  } else {
    sparse_.resize(num_edges);
  }
}

std::uint32_t PinCountTable::count(EdgeID e, BlockID b) const {
  if (dense()) return dense_[static_cast<std::size_t>(e) * k_ + b];
  for (const auto& [block, c] : sparse_[e]) {
    if (block == b) return c;
  }
  return 0;
}

std::uint32_t PinCountTable::increment(EdgeID e, BlockID b) {
  if (dense()) {
    auto& c = dense_[static_cast<std::size_t>(e) * k_ + b];
    if (c++ == 0) ++lambda_[e];
    return c;
  }
  auto& row = sparse_[e];
  for (auto& [block, c] : row) {
    if (block == b) return ++c;
  }
  row.emplace_back(b, 1);
  ++lambda_[e];
  return 1;
}

std::uint32_t PinCountTable::decrement(EdgeID e, BlockID b) {
  if (dense()) {
    auto& c = dense_[static_cast<std::size_t>(e) * k_ + b];
    if (--c == 0) --lambda_[e];
    return c;
  }
  auto& row = sparse_[e];
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].first == b) {
      const std::uint32_t left = --row[i].second;
      if (left == 0) {
        row[i] = row.back();
        row.pop_back();
        --lambda_[e];
      }
      return left;
    }
  }
  throw PartitionError("pin count underflow");
}

bool PinCountTable::operator==(const PinCountTable& other) const {
  if (k_ != other.k_ || lambda_ != other.lambda_) return false;
  for (EdgeID e = 0; e < lambda_.size(); ++e) {
    for (BlockID b = 0; b < k_; ++b) {
      if (count(e, b) != other.count(e, b)) return false;
    }
  }
  return true;
}

Partition::Partition(const Hypergraph& h, BlockID k, std::vector<BlockID> blocks)
    : h_(&h),
      k_(k),
      block_of_(std::move(blocks)),
      block_weight_(k, 0),
      block_size_(k, 0),
      pin_counts_(h.num_edges(), k) {
  if (k < 1) throw PartitionError("block count must be positive");
  if (block_of_.size() != h.initial_num_nodes()) {
    throw PartitionError("assignment size does not match node count");
  }
  for (NodeID v = 0; v < h.initial_num_nodes(); ++v) {
    if (!h.is_active(v)) continue;
    const BlockID b = block_of_[v];
    if (b < 0 || b >= k) {
      throw PartitionError("node " + std::to_string(v) + " has block id " + std::to_string(b) +
                           " outside [0, " + std::to_string(k) + ")");
    }
    block_weight_[b] += h.node_weight(v);
    ++block_size_[b];
  }
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    for (NodeID v : h.pins(e)) pin_counts_.increment(e, block_of_[v]);
    km1_ += (pin_counts_.connectivity(e) - 1) * h.edge_cost(e);
  }
}

bool Partition::all_blocks_nonempty() const {
  return std::none_of(block_size_.begin(), block_size_.end(), [](NodeID s) { return s == 0; });
}

Weight Partition::move_delta(NodeID v, BlockID target) const {
  const BlockID from = block_of_[v];
  if (from == target) return 0;
  Weight delta = 0;
  for (EdgeID e : h_->incident_edges(v)) {
    if (pin_counts_.count(e, from) == 1) delta -= h_->edge_cost(e);
    if (pin_counts_.count(e, target) == 0) delta += h_->edge_cost(e);
  }
  return delta;
}

Weight Partition::move_node(NodeID v, BlockID target) {
  const BlockID from = block_of_[v];
  if (target < 0 || target >= k_) throw PartitionError("target block out of range");
  if (target == from) throw PartitionError("node is already in the target block");
  if (block_size_[from] == 1) throw PartitionError("move would empty block " + std::to_string(from));

  Weight delta = 0;
  for (EdgeID e : h_->incident_edges(v)) {
    const Weight c = h_->edge_cost(e);
    if (pin_counts_.decrement(e, from) == 0) delta -= c;
    if (pin_counts_.increment(e, target) == 1) delta += c;
  }
  block_of_[v] = target;
  const Weight w = h_->node_weight(v);
  block_weight_[from] -= w;
  block_weight_[target] += w;
  --block_size_[from];
  ++block_size_[target];
  km1_ += delta;
  return delta;
}

void Partition::restore_uncontracted(const ContractionMemento& m) {
  const BlockID b = block_of_[m.kept_node];
  block_of_[m.removed_node] = b;
  ++block_size_[b];
  // Moved edges swap one pin of block b for another; only shrunk edges gain a pin.
  for (const auto& [e, pos] : m.shrunk_edges) pin_counts_.increment(e, b);
}

std::string Partition::audit() const {
  const Partition fresh(*h_, k_, block_of_);
  std::ostringstream why;
  for (BlockID b = 0; b < k_; ++b) {
    if (fresh.block_weight_[b] != block_weight_[b]) {
      why << "block " << b << " weight " << block_weight_[b] << " != recomputed " << fresh.block_weight_[b];
      return why.str();
    }
    if (fresh.block_size_[b] != block_size_[b]) {
      why << "block " << b << " size out of sync";
      return why.str();
    }
  }
  if (!(fresh.pin_counts_ == pin_counts_)) return "pin counts out of sync";
  if (fresh.km1_ != km1_) {
    why << "objective " << km1_ << " != recomputed " << fresh.km1_;
    return why.str();
  }
  return {};
}

Weight connectivity_metric(const Partition& p) {
  const Hypergraph& h = p.hypergraph();
  Weight total = 0;
  for (EdgeID e = 0; e < h.num_edges(); ++e) total += (p.connectivity(e) - 1) * h.edge_cost(e);
  return total;
}

Weight cut_metric(const Partition& p) {
  const Hypergraph& h = p.hypergraph();
  Weight total = 0;
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    if (p.connectivity(e) > 1) total += h.edge_cost(e);
  }
  return total;
}

namespace {

template <typename F>
void for_each_edge_connectivity(const Hypergraph& h, std::span<const BlockID> blocks, F&& f) {
  std::vector<BlockID> seen;
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    seen.clear();
    for (NodeID v : h.pins(e)) {
      if (std::find(seen.begin(), seen.end(), blocks[v]) == seen.end()) seen.push_back(blocks[v]);
    }
    f(e, static_cast<BlockID>(seen.size()));
  }
}

}  // namespace

Weight connectivity_metric(const Hypergraph& h, std::span<const BlockID> blocks) {
  Weight total = 0;
  for_each_edge_connectivity(h, blocks, [&](EdgeID e, BlockID lambda) {
    total += (lambda - 1) * h.edge_cost(e);
  });
  return total;
}

Weight cut_metric(const Hypergraph& h, std::span<const BlockID> blocks) {
  Weight total = 0;
  for_each_edge_connectivity(h, blocks, [&](EdgeID e, BlockID lambda) {
    if (lambda > 1) total += h.edge_cost(e);
  });
  return total;
}

Weight max_block_weight(Weight total_weight, BlockID k, double epsilon) {
  const Weight avg = (total_weight + k - 1) / k;
  const long double bound = (1.0L + static_cast<long double>(epsilon)) * static_cast<long double>(avg);
  return static_cast<Weight>(std::floor(bound * (1.0L + 1e-12L)));
}

bool is_balanced(const Partition& p, double epsilon) {
  const Weight bound = max_block_weight(p.hypergraph().total_weight(), p.k(), epsilon);
  for (BlockID b = 0; b < p.k(); ++b) {
    if (p.block_weight(b) > bound) return false;
  }
  return true;
}

bool is_balanced(const Hypergraph& h, std::span<const BlockID> blocks, BlockID k, double epsilon) {
  const Weight bound = max_block_weight(h.total_weight(), k, epsilon);
  std::vector<Weight> weight(k, 0);
  for (NodeID v = 0; v < h.initial_num_nodes(); ++v) {
    if (h.is_active(v)) weight[blocks[v]] += h.node_weight(v);
  }
  return std::all_of(weight.begin(), weight.end(), [&](Weight w) { return w <= bound; });
}

double imbalance(const Hypergraph& h, std::span<const BlockID> blocks, BlockID k) {
  std::vector<Weight> weight(k, 0);
  for (NodeID v = 0; v < h.initial_num_nodes(); ++v) {
    if (h.is_active(v)) weight[blocks[v]] += h.node_weight(v);
  }
  const Weight avg = (h.total_weight() + k - 1) / k;
  if (avg == 0) return 0.0;
  return static_cast<double>(*std::max_element(weight.begin(), weight.end())) / static_cast<double>(avg) - 1.0;
}

Signature signature(const Partition& p) {
  const Hypergraph& h = p.hypergraph();
  Signature d;
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    if (p.connectivity(e) > 1) d.emplace_back(e, static_cast<std::uint32_t>(p.connectivity(e) - 1));
  }
  return d;
}

Signature signature(const Hypergraph& h, std::span<const BlockID> blocks) {
  Signature d;
  for_each_edge_connectivity(h, blocks, [&](EdgeID e, BlockID lambda) {
    if (lambda > 1) d.emplace_back(e, static_cast<std::uint32_t>(lambda - 1));
  });
  return d;
}

}  // namespace mmhp
