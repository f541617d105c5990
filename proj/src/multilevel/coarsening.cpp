#include "multilevel/coarsening.h"

#include <algorithm>
#include <cmath>

namespace mmhp {

CoarseningConfig CoarseningConfig::standard(const Hypergraph& h, const Context& ctx) {
  CoarseningConfig cfg;
  cfg.t = ctx.contraction_limit_multiplier;
  cfg.k = ctx.k;
  cfg.rating_edge_size_cap = ctx.rating_edge_size_cap;
  const double tk = cfg.t * static_cast<double>(ctx.k);
  cfg.kappa = std::max<Weight>(1, static_cast<Weight>(std::ceil(static_cast<double>(h.total_weight()) / tk)));
  return cfg;
}

ContractionRating ContractionRating::heavy_edge() { return {}; }

ContractionRating ContractionRating::frequency(std::vector<std::uint32_t> edge_frequency, double gamma) {
  ContractionRating r;
  r.frequency_based_ = true;
  r.damping_.reserve(edge_frequency.size());
  for (auto f : edge_frequency) r.damping_.push_back(std::exp(-gamma * static_cast<double>(f)));
  return r;
}

double ContractionRating::term(const Hypergraph& h, EdgeID e) const {
  const auto size = static_cast<double>(h.edge_size(e));
  if (frequency_based_) return damping_[e] / size;
  return static_cast<double>(h.edge_cost(e)) / (size - 1.0);
}

double ContractionRating::scale(const Hypergraph& h, NodeID u, NodeID v) const {
  if (!frequency_based_) return 1.0;
  const double wu = static_cast<double>(h.node_weight(u));
  const double wv = static_cast<double>(h.node_weight(v));
  // Zero-weight nodes would make the rating unbounded; treat them as weight 1.
  return 1.0 / (std::max(wu, 1.0) * std::max(wv, 1.0));
}

double pair_rating(const Hypergraph& h, const ContractionRating& rating, NodeID u, NodeID v) {
  double sum = 0.0;
  for (EdgeID e : h.incident_edges(u)) {
    if (h.edge_size(e) < 2) continue;
    const auto pins = h.pins(e);
    if (std::find(pins.begin(), pins.end(), v) != pins.end()) sum += rating.term(h, e);
  }
  return sum * rating.scale(h, u, v);
}

double heavy_edge_rating(const Hypergraph& h, NodeID u, NodeID v) {
  return pair_rating(h, ContractionRating::heavy_edge(), u, v);
}

namespace {

class PartnerFinder {
 public:
  PartnerFinder(const Hypergraph& h, const CoarseningConfig& cfg, const Clustering& clustering,
                const ContractionRating& rating)
      : h_(h), cfg_(cfg), clustering_(clustering), rating_(rating), score_(h.initial_num_nodes(), 0.0), seen_(h.initial_num_nodes(), 0) {}

  NodeID best_partner(NodeID v, Rng& rng) {
    if (clustering_.policy == ClusterPolicy::kSameClusterOnly && clustering_.cluster_of[v] == 0) {
      return kInvalidNode;
    }
    touched_.clear();
    for (EdgeID e : h_.incident_edges(v)) {
      const std::size_t size = h_.edge_size(e);
      if (size < 2 || size > cfg_.rating_edge_size_cap) continue;
      const double term = rating_.term(h_, e);
      for (NodeID u : h_.pins(e)) {
        if (u == v) continue;
        if (!seen_[u]) {
          seen_[u] = 1;
          touched_.push_back(u);
        }
        score_[u] += term;
      }
    }

    NodeID best = kInvalidNode;
    double best_score = -1.0;
    std::size_t ties = 0;
    const Weight wv = h_.node_weight(v);
    for (NodeID u : touched_) {
      const double s = score_[u] * rating_.scale(h_, u, v);
      score_[u] = 0.0;
      seen_[u] = 0;
      if (cfg_.respect_kappa && wv + h_.node_weight(u) > cfg_.kappa) continue;
      if (!clustering_.allows(u, v)) continue;
      if (s > best_score) {
        best = u;
        best_score = s;
        ties = 1;
      } else if (s == best_score) {
        // Uniform choice among equally rated partners.
        ++ties;
        if (rng.uniform<std::size_t>(1, ties) == 1) best = u;
      }
    }
    return best;
  }

 private:
  const Hypergraph& h_;
  const CoarseningConfig& cfg_;
  const Clustering& clustering_;
  const ContractionRating& rating_;
  std::vector<double> score_;
  std::vector<char> seen_;
  std::vector<NodeID> touched_;
};

}  // namespace

CoarseningHierarchy coarsen(Hypergraph& h, const CoarseningConfig& cfg, const Clustering& clustering,
                            const ContractionRating& rating, Rng& rng) {
  CoarseningHierarchy hierarchy;
  const double limit = cfg.t * static_cast<double>(cfg.k);
  const auto floor_nodes = static_cast<NodeID>(std::max<BlockID>(cfg.k, 1));
  auto done = [&] {
    if (h.current_num_nodes() <= floor_nodes) return true;
    return cfg.stop_at_tk && static_cast<double>(h.current_num_nodes()) <= limit;
  };

  PartnerFinder finder(h, cfg, clustering, rating);
  while (!done()) {
    std::vector<NodeID> order = h.active_nodes();
    rng.shuffle(order);
    std::size_t contracted = 0;
    for (NodeID v : order) {
      if (done()) break;
      if (!h.is_active(v)) continue;
      const NodeID u = finder.best_partner(v, rng);
      if (u == kInvalidNode) continue;
      hierarchy.mementos.push_back(h.contract(v, u));
      ++contracted;
    }
    if (contracted == 0) break;
  }
  return hierarchy;
}

void uncoarsen_all(Hypergraph& h, CoarseningHierarchy& hierarchy) {
  for (auto it = hierarchy.mementos.rbegin(); it != hierarchy.mementos.rend(); ++it) h.uncontract(*it);
  hierarchy.mementos.clear();
}

}  // namespace mmhp
