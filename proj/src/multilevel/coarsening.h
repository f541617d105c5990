#pragma once

#include <cstdint>
#include <vector>

#include "hgraph/hypergraph.h"
#include "multilevel/context.h"
#include "util/random.h"

namespace mmhp {

enum class ClusterPolicy {
  // u and v contract only if they share a nonzero cluster label.
  kSameClusterOnly,
  // u and v contract if they share a label or either label is 0.
  kSameClusterOrZero,
  // labels are ignored.
  kUnrestricted,
};

struct Clustering {
  std::vector<std::uint32_t> cluster_of;
  ClusterPolicy policy = ClusterPolicy::kUnrestricted;

  static Clustering unrestricted(NodeID num_nodes) {
    return {std::vector<std::uint32_t>(num_nodes, 0), ClusterPolicy::kUnrestricted};
  }

  bool allows(NodeID u, NodeID v) const {
    switch (policy) {
      case ClusterPolicy::kSameClusterOnly:
        return cluster_of[u] != 0 && cluster_of[u] == cluster_of[v];
      case ClusterPolicy::kSameClusterOrZero:
        return cluster_of[u] == cluster_of[v] || cluster_of[u] == 0 || cluster_of[v] == 0;
      case ClusterPolicy::kUnrestricted:
        return true;
    }
    return false;
  }
};

struct CoarseningConfig {
  double t = 150.0;
  Weight kappa = 1;
  bool respect_kappa = true;
  bool stop_at_tk = true;
  BlockID k = 2;
  std::size_t rating_edge_size_cap = 1000;

  // κ = ⌈W / (t·k)⌉ with the context's t and k.
  static CoarseningConfig standard(const Hypergraph& h, const Context& ctx);
};

// Pairwise contraction score: scale(u, v) · Σ_{e ∈ N(u) ∩ N(v)} term(e).
// Edges with fewer than two pins never contribute.
class ContractionRating {
 public:
  // Heavy-edge rating: term(e) = c(e) / (|pins(e)| − 1), scale = 1.
  static ContractionRating heavy_edge();
  // Frequency rating: term(e) = exp(−γ·f(e)) / |pins(e)|, scale = 1 / (w(u)·w(v)).
  static ContractionRating frequency(std::vector<std::uint32_t> edge_frequency, double gamma);

  double term(const Hypergraph& h, EdgeID e) const;
  double scale(const Hypergraph& h, NodeID u, NodeID v) const;

 private:
  bool frequency_based_ = false;
  std::vector<double> damping_;
};

double heavy_edge_rating(const Hypergraph& h, NodeID u, NodeID v);
double pair_rating(const Hypergraph& h, const ContractionRating& rating, NodeID u, NodeID v);

struct CoarseningHierarchy {
  std::vector<ContractionMemento> mementos;
};

// n-level coarsening: visits active nodes in random order, contracts each
// into its highest-rated eligible neighbor, and repeats until the stop rule
// fires or a full pass finds no eligible pair. Never goes below k nodes.
CoarseningHierarchy coarsen(Hypergraph& h, const CoarseningConfig& cfg, const Clustering& clustering,
                            const ContractionRating& rating, Rng& rng);

// Reverts every contraction of the hierarchy (no refinement).
void uncoarsen_all(Hypergraph& h, CoarseningHierarchy& hierarchy);

}  // namespace mmhp
