#include "hgraph/hypergraph.h"

#include <algorithm>
#include <sstream>

namespace mmhp {

Hypergraph::Hypergraph(NodeID num_nodes, std::vector<std::vector<NodeID>> edges,
                       std::vector<Weight> node_weights, std::vector<Weight> edge_costs)
    : pins_(std::move(edges)),
      incident_(num_nodes),
      node_weight_(std::move(node_weights)),
      edge_cost_(std::move(edge_costs)),
      active_(num_nodes, 1),
      num_active_(num_nodes) {
  if (node_weight_.empty()) node_weight_.assign(num_nodes, 1);
  if (edge_cost_.empty()) edge_cost_.assign(pins_.size(), 1);
  if (node_weight_.size() != num_nodes) {
    throw HypergraphError("node weight count does not match node count");
  }
  if (edge_cost_.size() != pins_.size()) {
    throw HypergraphError("edge cost count does not match edge count");
  }
  for (Weight w : node_weight_) {
    if (w < 0) throw HypergraphError("negative node weight");
    total_weight_ += w;
  }
  for (Weight c : edge_cost_) {
    if (c < 0) throw HypergraphError("negative edge cost");
  }

  std::vector<EdgeID> last_seen(num_nodes, static_cast<EdgeID>(-1));
  for (EdgeID e = 0; e < pins_.size(); ++e) {
    if (pins_[e].empty()) {
      throw HypergraphError("edge " + std::to_string(e) + " has no pins");
    }
    for (NodeID v : pins_[e]) {
      if (v >= num_nodes) {
        throw HypergraphError("edge " + std::to_string(e) + " has out-of-range pin " +
                              std::to_string(v));
      }
      if (last_seen[v] == e) {
        throw HypergraphError("edge " + std::to_string(e) + " repeats pin " + std::to_string(v));
      }
      last_seen[v] = e;
      incident_[v].push_back(e);
    }
    initial_num_pins_ += pins_[e].size();
  }
  edge_mark_.assign(pins_.size(), 0);
}

std::size_t Hypergraph::current_num_pins() const {
  std::size_t total = 0;
  for (const auto& p : pins_) total += p.size();
  return total;
}

std::vector<NodeID> Hypergraph::active_nodes() const {
  std::vector<NodeID> nodes;
  nodes.reserve(num_active_);
  for (NodeID v = 0; v < initial_num_nodes(); ++v) {
    if (active_[v]) nodes.push_back(v);
  }
  return nodes;
}

ContractionMemento Hypergraph::contract(NodeID u, NodeID v) {
  if (u == v) throw HypergraphError("cannot contract a node with itself");
  if (u >= initial_num_nodes() || v >= initial_num_nodes() || !active_[u] || !active_[v]) {
    throw HypergraphError("contraction requires two active nodes");
  }

  ContractionMemento m;
  m.kept_node = u;
  m.removed_node = v;
  m.removed_weight = node_weight_[v];
  m.depth = depth_;

  ++mark_epoch_;
  for (EdgeID e : incident_[u]) edge_mark_[e] = mark_epoch_;

  for (EdgeID e : incident_[v]) {
    auto& pins = pins_[e];
    const auto pos = static_cast<std::uint32_t>(std::find(pins.begin(), pins.end(), v) - pins.begin());
    if (edge_mark_[e] == mark_epoch_) {
      pins[pos] = pins.back();
      pins.pop_back();
      m.shrunk_edges.emplace_back(e, pos);
    } else {
      pins[pos] = u;
      incident_[u].push_back(e);
      m.moved_edges.emplace_back(e, pos);
    }
  }

  node_weight_[u] += node_weight_[v];
  active_[v] = 0;
  --num_active_;
  ++depth_;
  return m;
}

void Hypergraph::uncontract(const ContractionMemento& m) {
  if (depth_ == 0 || m.depth + 1 != depth_) {
    throw HypergraphError("uncontract applied out of stack order");
  }
  const NodeID u = m.kept_node;
  const NodeID v = m.removed_node;
  if (active_[v] || !active_[u]) throw HypergraphError("memento does not match hypergraph state");

  for (auto it = m.moved_edges.rbegin(); it != m.moved_edges.rend(); ++it) {
    pins_[it->first][it->second] = v;
    incident_[u].pop_back();
  }
  for (auto it = m.shrunk_edges.rbegin(); it != m.shrunk_edges.rend(); ++it) {
    auto& pins = pins_[it->first];
    pins.push_back(v);
    std::swap(pins[it->second], pins.back());
  }

  node_weight_[u] -= m.removed_weight;
  active_[v] = 1;
  ++num_active_;
  --depth_;
}

std::string Hypergraph::audit() const {
  std::ostringstream why;
  Weight active_weight = 0;
  NodeID active_count = 0;
  for (NodeID v = 0; v < initial_num_nodes(); ++v) {
    if (!active_[v]) continue;
    ++active_count;
    active_weight += node_weight_[v];
    for (EdgeID e : incident_[v]) {
      if (std::find(pins_[e].begin(), pins_[e].end(), v) == pins_[e].end()) {
        why << "node " << v << " lists edge " << e << " but is not a pin of it";
        return why.str();
      }
    }
  }
  if (active_count != num_active_) return "active node count out of sync";
  if (active_weight != total_weight_) return "active node weight differs from total weight";
  for (EdgeID e = 0; e < num_edges(); ++e) {
    if (pins_[e].empty()) {
      why << "edge " << e << " has no pins";
      return why.str();
    }
    std::vector<NodeID> sorted(pins_[e].begin(), pins_[e].end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      why << "edge " << e << " repeats a pin";
      return why.str();
    }
    for (NodeID v : pins_[e]) {
      if (!active_[v]) {
        why << "edge " << e << " contains inactive node " << v;
        return why.str();
      }
      const auto& inc = incident_[v];
      if (std::find(inc.begin(), inc.end(), e) == inc.end()) {
        why << "edge " << e << " contains node " << v << " which does not list it";
        return why.str();
      }
    }
  }
  return {};
}

bool Hypergraph::operator==(const Hypergraph& other) const {
  if (active_ != other.active_ || node_weight_ != other.node_weight_ ||
      edge_cost_ != other.edge_cost_ || pins_ != other.pins_) {
    return false;
  }
  for (NodeID v = 0; v < initial_num_nodes(); ++v) {
    if (active_[v] && incident_[v] != other.incident_[v]) return false;
  }
  return true;
}

}  // namespace mmhp
