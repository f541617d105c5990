#include "mmhp.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "harness/aggregate.h"
#include "harness/records.h"
#include "harness/run.h"
#include "hgraph/hmetis_io.h"
#include "partition/partition.h"

struct mmhp_hypergraph {
  mmhp::Hypergraph graph;
};

struct mmhp_result {
  mmhp::RunOptions options;
  mmhp::RunOutcome outcome;
};

namespace {

thread_local std::string last_error;

mmhp_status fail(mmhp_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps exceptions escaping the core onto status codes.
template <typename F>
mmhp_status guarded(F&& body) {
  try {
    return body();
  } catch (const mmhp::ParseError& e) {
    return fail(MMHP_ERR_PARSE, e.what());
  } catch (const mmhp::IoError& e) {
    return fail(MMHP_ERR_IO, e.what());
  } catch (const mmhp::HypergraphError& e) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const mmhp::PartitionError& e) {
    return fail(MMHP_ERR_PRECONDITION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MMHP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MMHP_ERR_INTERNAL, e.what());
  }
}

mmhp_status store_graph(mmhp::Hypergraph graph, mmhp_hypergraph** out) {
  *out = new mmhp_hypergraph{std::move(graph)};
  return MMHP_OK;
}

mmhp::OperatorConfig schedule_of(const mmhp_run_config& cfg) {
  mmhp::OperatorConfig ops;
  ops.p_combine = cfg.p_combine;
  for (int i = 0; i < 3; ++i) ops.combine[i] = cfg.combine[i];
  for (int i = 0; i < 4; ++i) ops.mutate[i] = cfg.mutate[i];
  ops.gamma = cfg.gamma;
  return ops;
}

void set_schedule(mmhp_run_config& cfg, const mmhp::OperatorConfig& ops) {
  cfg.p_combine = ops.p_combine;
  for (int i = 0; i < 3; ++i) cfg.combine[i] = ops.combine[i];
  for (int i = 0; i < 4; ++i) cfg.mutate[i] = ops.mutate[i];
  cfg.gamma = ops.gamma;
}

template <typename F>
mmhp_status write_file(const std::string& path, F&& emit) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return fail(MMHP_ERR_IO, "cannot open " + path + " for writing");
  emit(out);
  out.flush();
  if (!out) return fail(MMHP_ERR_IO, "write to " + path + " failed");
  return MMHP_OK;
}

}  // namespace

extern "C" {

const char* mmhp_last_error(void) { return last_error.c_str(); }

const char* mmhp_status_string(mmhp_status status) {
  switch (status) {
    case MMHP_OK:
      return "ok";
    case MMHP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MMHP_ERR_IO:
      return "i/o error";
    case MMHP_ERR_PARSE:
      return "parse error";
    case MMHP_ERR_PRECONDITION:
      return "precondition violated";
    case MMHP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

mmhp_status mmhp_hypergraph_read(const char* path, mmhp_hypergraph** out) {
  if (path == nullptr || out == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return store_graph(mmhp::read_hmetis_file(path), out); });
}

mmhp_status mmhp_hypergraph_parse(const char* text, size_t length, mmhp_hypergraph** out) {
  if (text == nullptr || out == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return store_graph(mmhp::parse_hmetis_string(std::string(text, length)), out); });
}

mmhp_status mmhp_hypergraph_create(uint32_t num_nodes, uint32_t num_edges, const uint64_t* offsets,
                                   const uint32_t* pins, const int64_t* node_weights, const int64_t* edge_costs,
                                   mmhp_hypergraph** out) {
  if (out == nullptr || (num_edges > 0 && (offsets == nullptr || pins == nullptr))) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    std::vector<std::vector<mmhp::NodeID>> edges(num_edges);
    for (uint32_t e = 0; e < num_edges; ++e) {
      if (offsets[e + 1] < offsets[e]) return fail(MMHP_ERR_INVALID_ARGUMENT, "offsets must be non-decreasing");
      edges[e].assign(pins + offsets[e], pins + offsets[e + 1]);
    }
    std::vector<mmhp::Weight> weights;
    if (node_weights != nullptr) weights.assign(node_weights, node_weights + num_nodes);
    std::vector<mmhp::Weight> costs;
    if (edge_costs != nullptr) costs.assign(edge_costs, edge_costs + num_edges);
    return store_graph(mmhp::Hypergraph(num_nodes, std::move(edges), std::move(weights), std::move(costs)), out);
  });
}

void mmhp_hypergraph_free(mmhp_hypergraph* h) { delete h; }
uint32_t mmhp_hypergraph_num_nodes(const mmhp_hypergraph* h) { return h->graph.initial_num_nodes(); }
uint32_t mmhp_hypergraph_num_edges(const mmhp_hypergraph* h) { return h->graph.num_edges(); }
uint64_t mmhp_hypergraph_num_pins(const mmhp_hypergraph* h) { return h->graph.initial_num_pins(); }
int64_t mmhp_hypergraph_total_weight(const mmhp_hypergraph* h) { return h->graph.total_weight(); }

void mmhp_run_config_init(mmhp_run_config* cfg) {
  if (cfg == nullptr) return;
  const mmhp::RunOptions defaults;
  cfg->k = defaults.k;
  cfg->epsilon = defaults.epsilon;
  cfg->mode = MMHP_MODE_SINGLE;
  cfg->time_limit = 0.0;
  cfg->generations = 0;
  cfg->seed = 0;
  set_schedule(*cfg, mmhp::OperatorConfig{});
  cfg->population_size = 0;
  cfg->max_vcycles = defaults.max_vcycles;
  cfg->vcycle_patience = defaults.vcycle_patience;
}

mmhp_status mmhp_run_config_preset(mmhp_run_config* cfg, const char* name) {
  if (cfg == nullptr || name == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  const auto preset = mmhp::OperatorConfig::preset(name);
  if (!preset) return fail(MMHP_ERR_INVALID_ARGUMENT, std::string("unknown preset ") + name);
  set_schedule(*cfg, *preset);
  return MMHP_OK;
}

mmhp_status mmhp_run(mmhp_hypergraph* h, const mmhp_run_config* cfg, mmhp_progress_fn progress, void* user,
                     mmhp_result** out) {
  if (h == nullptr || cfg == nullptr || out == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (cfg->k < 2) return fail(MMHP_ERR_INVALID_ARGUMENT, "k must be at least 2");
  if (!(cfg->epsilon >= 0.0) || !std::isfinite(cfg->epsilon)) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, "epsilon must be a non-negative number");
  }
  if (cfg->mode != MMHP_MODE_SINGLE && cfg->mode != MMHP_MODE_REPEATED && cfg->mode != MMHP_MODE_EVOLVE) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, "unknown mode");
  }
  if (cfg->mode != MMHP_MODE_SINGLE && cfg->generations == 0 && !(cfg->time_limit > 0.0)) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, "repeated and evolve modes need a time limit or a generation count");
  }
  if (cfg->max_vcycles < 0 || cfg->vcycle_patience < 1) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, "invalid V-cycle limits");
  }
  const mmhp::OperatorConfig ops = schedule_of(*cfg);
  if (!ops.valid()) return fail(MMHP_ERR_INVALID_ARGUMENT, "invalid operator schedule");
  if (h->graph.initial_num_nodes() < static_cast<mmhp::NodeID>(cfg->k)) {
    return fail(MMHP_ERR_PRECONDITION, "k = " + std::to_string(cfg->k) + " exceeds the node count " +
                                           std::to_string(h->graph.initial_num_nodes()));
  }
  return guarded([&] {
    auto result = std::make_unique<mmhp_result>();
    mmhp::RunOptions& o = result->options;
    o.k = cfg->k;
    o.epsilon = cfg->epsilon;
    o.mode = static_cast<mmhp::RunMode>(cfg->mode);
    o.time_limit = cfg->time_limit;
    o.generations = cfg->generations;
    o.seed = cfg->seed;
    o.evolution.operators = ops;
    o.evolution.population_size = cfg->population_size;
    o.max_vcycles = cfg->max_vcycles;
    o.vcycle_patience = cfg->vcycle_patience;
    mmhp::TrajectorySink sink;
    if (progress != nullptr) {
      sink = [&](const mmhp::TrajectoryPoint& p) {
        progress(user, p.elapsed, p.generation, p.op.c_str(), static_cast<int64_t>(p.best));
      };
    }
    result->outcome = mmhp::run_partitioner(h->graph, o, sink);
    *out = result.release();
    return MMHP_OK;
  });
}

void mmhp_result_free(mmhp_result* r) { delete r; }
int64_t mmhp_result_km1(const mmhp_result* r) { return r->outcome.km1; }
int64_t mmhp_result_cut(const mmhp_result* r) { return r->outcome.cut; }
double mmhp_result_imbalance(const mmhp_result* r) { return r->outcome.imbalance; }
int mmhp_result_balanced(const mmhp_result* r) { return r->outcome.balanced ? 1 : 0; }
double mmhp_result_runtime(const mmhp_result* r) { return r->outcome.runtime; }
uint64_t mmhp_result_generations(const mmhp_result* r) { return r->outcome.generations; }
uint32_t mmhp_result_population_size(const mmhp_result* r) {
  return static_cast<uint32_t>(r->outcome.population_size);
}

uint64_t mmhp_result_invocations(const mmhp_result* r, const char* op) {
  if (op == nullptr) return 0;
  for (int i = 0; i < mmhp::kNumOperators; ++i) {
    if (mmhp::operator_name(static_cast<mmhp::Operator>(i)) == op) return r->outcome.invocations[i];
  }
  return 0;
}

uint32_t mmhp_result_num_nodes(const mmhp_result* r) { return static_cast<uint32_t>(r->outcome.blocks.size()); }
const int32_t* mmhp_result_blocks(const mmhp_result* r) { return r->outcome.blocks.data(); }

mmhp_status mmhp_result_write_partition(const mmhp_result* r, const char* path) {
  if (r == nullptr || path == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    mmhp::write_partition_file(r->outcome.blocks, path);
    return MMHP_OK;
  });
}

mmhp_status mmhp_result_write_stats(const mmhp_result* r, const char* instance, const char* path) {
  if (r == nullptr || instance == nullptr || path == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    return write_file(path, [&](std::ostream& out) { mmhp::write_stats(out, instance, r->options, r->outcome); });
  });
}

mmhp_status mmhp_result_write_convergence(const mmhp_result* r, const char* instance, const char* path) {
  if (r == nullptr || instance == nullptr || path == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    return write_file(path, [&](std::ostream& out) {
      mmhp::write_convergence_csv(out, instance, r->options.seed, r->outcome.trajectory);
    });
  });
}

mmhp_status mmhp_evaluate(const mmhp_hypergraph* h, const int32_t* blocks, int32_t k, double epsilon, int64_t* km1,
                          int64_t* cut, int* balanced) {
  if (h == nullptr || blocks == nullptr) return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  if (k < 1) return fail(MMHP_ERR_INVALID_ARGUMENT, "k must be positive");
  const std::span<const mmhp::BlockID> assignment(blocks, h->graph.initial_num_nodes());
  for (mmhp::BlockID b : assignment) {
    if (b < 0 || b >= k) return fail(MMHP_ERR_INVALID_ARGUMENT, "block id out of range");
  }
  return guarded([&] {
    if (km1 != nullptr) *km1 = mmhp::connectivity_metric(h->graph, assignment);
    if (cut != nullptr) *cut = mmhp::cut_metric(h->graph, assignment);
    if (balanced != nullptr) *balanced = mmhp::is_balanced(h->graph, assignment, k, epsilon) ? 1 : 0;
    return MMHP_OK;
  });
}

mmhp_status mmhp_aggregate(const char* mode, const char* grid, size_t num_series, const char* const* labels,
                           const char* const* paths, const char* out_path) {
  if (mode == nullptr || out_path == nullptr || (num_series > 0 && (labels == nullptr || paths == nullptr))) {
    return fail(MMHP_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (num_series == 0) return fail(MMHP_ERR_INVALID_ARGUMENT, "no series given");
  const std::string m = mode;
  const std::string g = grid == nullptr ? "log" : grid;
  if (m != "convergence" && m != "performance") return fail(MMHP_ERR_INVALID_ARGUMENT, "unknown mode " + m);
  if (g != "log" && g != "union") return fail(MMHP_ERR_INVALID_ARGUMENT, "unknown grid " + g);
  return guarded([&] {
    std::vector<mmhp::Series> series;
    for (size_t i = 0; i < num_series; ++i) {
      series.push_back(mmhp::load_series(labels[i], paths[i]));
      if (series.back().records.empty()) return fail(MMHP_ERR_PRECONDITION, std::string("series ") + labels[i] + " has no records");
    }
    if (m == "convergence") {
      const auto points =
          mmhp::aggregate_convergence(series, g == "union" ? mmhp::TimeGrid::kUnion : mmhp::TimeGrid::kLog);
      return write_file(out_path, [&](std::ostream& out) { mmhp::write_convergence_points(out, points); });
    }
    const auto points = mmhp::aggregate_performance(series);
    return write_file(out_path, [&](std::ostream& out) { mmhp::write_performance_points(out, points); });
  });
}

const char* mmhp_version(void) { return "0.1.0"; }

}  // extern "C"
