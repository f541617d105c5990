#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hgraph/hypergraph.h"

namespace mmhp {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-edge, per-block pin counts |pins(e) ∩ V_b|. Dense rows for small k,
// sparse (block, count) lists otherwise since λ(e) is usually much smaller
// than k.
class PinCountTable {
 public:
  static constexpr BlockID kDenseLimit = 8;

  PinCountTable() = default;
  PinCountTable(EdgeID num_edges, BlockID k);

  std::uint32_t count(EdgeID e, BlockID b) const;
  // Returns the count after the update.
  std::uint32_t increment(EdgeID e, BlockID b);
  std::uint32_t decrement(EdgeID e, BlockID b);
  BlockID connectivity(EdgeID e) const { return lambda_[e]; }

  // Calls f(block, count) for every block with a nonzero count.
  template <typename F>
  void for_each_block(EdgeID e, F&& f) const {
    if (dense()) {
      const std::uint32_t* row = &dense_[static_cast<std::size_t>(e) * k_];
      for (BlockID b = 0; b < k_; ++b) {
        if (row[b] != 0) f(b, row[b]);
      }
    } else {
      for (const auto& [b, c] : sparse_[e]) f(b, c);
    }
  }

  bool operator==(const PinCountTable& other) const;

 private:
  bool dense() const { return k_ <= kDenseLimit; }

  BlockID k_ = 0;
  std::vector<std::uint32_t> dense_;
  std::vector<std::vector<std::pair<BlockID, std::uint32_t>>> sparse_;
  std::vector<BlockID> lambda_;
};

// k-way partition of the active nodes of a hypergraph with incrementally
// maintained block weights, pin counts and connectivity objective. Holds a
// non-owning pointer to the hypergraph, which must outlive the partition and
// must not be contracted or uncontracted except through the multilevel
// driver (see restore_uncontracted).
class Partition {
 public:
  Partition() = default;

  // blocks has one entry per initial node; entries of inactive nodes are
  // ignored. Throws PartitionError on out-of-range block ids. Empty blocks
  // are allowed at construction; check all_blocks_nonempty() where required.
  Partition(const Hypergraph& h, BlockID k, std::vector<BlockID> blocks);

  const Hypergraph& hypergraph() const { return *h_; }
  BlockID k() const { return k_; }
  BlockID block_of(NodeID v) const { return block_of_[v]; }
  const std::vector<BlockID>& blocks() const { return block_of_; }
  Weight block_weight(BlockID b) const { return block_weight_[b]; }
  NodeID block_size(BlockID b) const { return block_size_[b]; }
  std::uint32_t pins_in_block(EdgeID e, BlockID b) const { return pin_counts_.count(e, b); }
  BlockID connectivity(EdgeID e) const { return pin_counts_.connectivity(e); }
  const PinCountTable& pin_counts() const { return pin_counts_; }

  // Incrementally maintained (λ−1) objective.
  Weight km1() const { return km1_; }
  bool all_blocks_nonempty() const;

  // Connectivity-metric change if v moved to target (negative = improvement).
  Weight move_delta(NodeID v, BlockID target) const;

  // Moves v and returns the exact change of the (λ−1) objective. Throws
  // PartitionError if target equals the current block, is out of range, or
  // the move would leave the source block without nodes.
  Weight move_node(NodeID v, BlockID target);

  // Must be called right after h.uncontract(m) on the hypergraph this
  // partition refers to: the removed node joins the kept node's block.
  void restore_uncontracted(const ContractionMemento& m);

  // Recomputes everything from scratch and compares with the incremental
  // state. Empty string when consistent.
  std::string audit() const;

 private:
  const Hypergraph* h_ = nullptr;
  BlockID k_ = 0;
  std::vector<BlockID> block_of_;
  std::vector<Weight> block_weight_;
  std::vector<NodeID> block_size_;
  PinCountTable pin_counts_;
  Weight km1_ = 0;
};

// Σ_e (λ(e) − 1)·c(e) from the maintained pin counts.
Weight connectivity_metric(const Partition& p);
// Σ over edges with λ(e) > 1 of c(e).
Weight cut_metric(const Partition& p);

// From-scratch evaluation of an assignment; the objective of record for
// individuals and reports.
Weight connectivity_metric(const Hypergraph& h, std::span<const BlockID> blocks);
Weight cut_metric(const Hypergraph& h, std::span<const BlockID> blocks);

// Largest admissible block weight (1 + ε)·⌈W / k⌉, rounded down to an integer
// weight. The real-valued bound is compared literally; the small relative
// slack only absorbs floating-point representation error in (1 + ε).
Weight max_block_weight(Weight total_weight, BlockID k, double epsilon);
bool is_balanced(const Partition& p, double epsilon);
bool is_balanced(const Hypergraph& h, std::span<const BlockID> blocks, BlockID k, double epsilon);
// max_b w(V_b) / ⌈W/k⌉ − 1.
double imbalance(const Hypergraph& h, std::span<const BlockID> blocks, BlockID k);

// Multiset D: every edge e appears max(λ(e) − 1, 0) times. Returned as sorted
// (edge, multiplicity) pairs with multiplicity > 0.
using Signature = std::vector<std::pair<EdgeID, std::uint32_t>>;
Signature signature(const Partition& p);
Signature signature(const Hypergraph& h, std::span<const BlockID> blocks);

}  // namespace mmhp
