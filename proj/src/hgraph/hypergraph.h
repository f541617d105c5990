#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "util/types.h"

namespace mmhp {

class HypergraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Record of a single contraction. Applying Hypergraph::uncontract with it
// restores pin order, incidence order and weights exactly.
struct ContractionMemento {
  NodeID kept_node = kInvalidNode;
  NodeID removed_node = kInvalidNode;
  // (edge, position of the removed node in pins(edge)); the removed node was
  // replaced in place by kept_node.
  std::vector<std::pair<EdgeID, std::uint32_t>> moved_edges;
  // (edge, former position of the removed node); the removed node was deleted
  // by swapping the last pin into its slot.
  std::vector<std::pair<EdgeID, std::uint32_t>> shrunk_edges;
  Weight removed_weight = 0;
  std::size_t depth = 0;
};

// Undirected hypergraph (V, N, w, c) with n-level contraction support.
//
// Edges reduced to a single pin by contraction stay in the edge list. They never
// contribute to the objective and are skipped by ratings. Identical edges are
// not merged.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Throws HypergraphError on empty edges, repeated pins, out-of-range pins,
  // negative weights or mismatched weight vector sizes. Empty weight/cost
  // vectors default to all ones.
  Hypergraph(NodeID num_nodes, std::vector<std::vector<NodeID>> edges,
             std::vector<Weight> node_weights = {}, std::vector<Weight> edge_costs = {});

  NodeID initial_num_nodes() const { return static_cast<NodeID>(node_weight_.size()); }
  NodeID current_num_nodes() const { return num_active_; }
  EdgeID num_edges() const { return static_cast<EdgeID>(pins_.size()); }
  std::size_t initial_num_pins() const { return initial_num_pins_; }
  std::size_t current_num_pins() const;

  std::span<const NodeID> pins(EdgeID e) const { return pins_[e]; }
  std::size_t edge_size(EdgeID e) const { return pins_[e].size(); }
  // Only meaningful for active nodes.
  std::span<const EdgeID> incident_edges(NodeID v) const { return incident_[v]; }
  std::size_t node_degree(NodeID v) const { return incident_[v].size(); }

  Weight node_weight(NodeID v) const { return node_weight_[v]; }
  Weight edge_cost(EdgeID e) const { return edge_cost_[e]; }
  Weight total_weight() const { return total_weight_; }
  bool is_active(NodeID v) const { return active_[v] != 0; }
  std::vector<NodeID> active_nodes() const;

  // Merges v into u. w(u) += w(v); v is replaced by u in N(v) \ N(u) and
  // removed from N(v) ∩ N(u); v becomes inactive.
  ContractionMemento contract(NodeID u, NodeID v);

  // Reverts the most recent contraction. Throws if m is not the top of the
  // contraction stack.
  void uncontract(const ContractionMemento& m);

  std::size_t contraction_depth() const { return depth_; }

  // Full scan of incidence symmetry, pin uniqueness, and weights. Returns an
  // empty string when consistent, otherwise a description of the first defect.
  std::string audit() const;

  // Exact structural equality (pin order, incidence order, weights, activity).
  bool operator==(const Hypergraph& other) const;

 private:
  std::vector<std::vector<NodeID>> pins_;
  std::vector<std::vector<EdgeID>> incident_;
  std::vector<Weight> node_weight_;
  std::vector<Weight> edge_cost_;
  std::vector<char> active_;
  NodeID num_active_ = 0;
  Weight total_weight_ = 0;
  std::size_t initial_num_pins_ = 0;
  std::size_t depth_ = 0;
  // Scratch marker over edges used by contract(); not part of the state.
  std::vector<std::size_t> edge_mark_;
  std::size_t mark_epoch_ = 0;
};

}  // namespace mmhp
