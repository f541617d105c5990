/* C interface of the mmhp hypergraph partitioner. */
#ifndef MMHP_H
#define MMHP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MMHP_API __declspec(dllexport)
#else
#define MMHP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmhp_status {
  MMHP_OK = 0,
  MMHP_ERR_INVALID_ARGUMENT = 1,
  MMHP_ERR_IO = 2,
  MMHP_ERR_PARSE = 3,
  /* The request cannot be served for this input, e.g. k exceeds the node count. */
  MMHP_ERR_PRECONDITION = 4,
  MMHP_ERR_INTERNAL = 5
} mmhp_status;

typedef enum mmhp_mode { MMHP_MODE_SINGLE = 0, MMHP_MODE_REPEATED = 1, MMHP_MODE_EVOLVE = 2 } mmhp_mode;

typedef struct mmhp_hypergraph mmhp_hypergraph;
typedef struct mmhp_result mmhp_result;

typedef struct mmhp_run_config {
  int32_t k;
  double epsilon;
  mmhp_mode mode;
  /* Wall-clock budget in seconds (repeated, evolve). */
  double time_limit;
  /* Nonzero selects generation-count mode: deterministic, elapsed time is
     reported in multilevel runs instead of seconds. */
  uint64_t generations;
  uint64_t seed;
  /* Evolution schedule. */
  double p_combine;
  double combine[3];
  double mutate[4];
  double gamma;
  /* 0 = derived from the budget. */
  uint32_t population_size;
  /* Repeated mode: V-cycles per partition and early-stop patience. */
  int32_t max_vcycles;
  int32_t vcycle_patience;
} mmhp_run_config;

/* Called on every improvement of the best objective; op is an operator tag. */
typedef void (*mmhp_progress_fn)(void* user, double elapsed, uint64_t generation, const char* op, int64_t best);

/* Message of the last failed call on this thread; never NULL. */
MMHP_API const char* mmhp_last_error(void);
MMHP_API const char* mmhp_status_string(mmhp_status status);

MMHP_API mmhp_status mmhp_hypergraph_read(const char* path, mmhp_hypergraph** out);
MMHP_API mmhp_status mmhp_hypergraph_parse(const char* text, size_t length, mmhp_hypergraph** out);
/* Edge e has pins pins[offsets[e] .. offsets[e+1]). Weight and cost arrays may be NULL (all 1). */
MMHP_API mmhp_status mmhp_hypergraph_create(uint32_t num_nodes, uint32_t num_edges, const uint64_t* offsets,
                                            const uint32_t* pins, const int64_t* node_weights,
                                            const int64_t* edge_costs, mmhp_hypergraph** out);
MMHP_API void mmhp_hypergraph_free(mmhp_hypergraph* h);
MMHP_API uint32_t mmhp_hypergraph_num_nodes(const mmhp_hypergraph* h);
MMHP_API uint32_t mmhp_hypergraph_num_edges(const mmhp_hypergraph* h);
MMHP_API uint64_t mmhp_hypergraph_num_pins(const mmhp_hypergraph* h);
MMHP_API int64_t mmhp_hypergraph_total_weight(const mmhp_hypergraph* h);

/* Defaults: k = 2, epsilon = 0.03, single mode, the "mma" schedule. */
MMHP_API void mmhp_run_config_init(mmhp_run_config* cfg);
/* Overwrites the schedule fields with a named preset:
   kahypar-e, mma-m-0.5, mma, mma-g, mma-eq-c. */
MMHP_API mmhp_status mmhp_run_config_preset(mmhp_run_config* cfg, const char* name);

/* h is modified during the call and restored before it returns; do not share
   one handle between concurrent runs. */
MMHP_API mmhp_status mmhp_run(mmhp_hypergraph* h, const mmhp_run_config* cfg, mmhp_progress_fn progress,
                              void* user, mmhp_result** out);
MMHP_API void mmhp_result_free(mmhp_result* r);
MMHP_API int64_t mmhp_result_km1(const mmhp_result* r);
MMHP_API int64_t mmhp_result_cut(const mmhp_result* r);
MMHP_API double mmhp_result_imbalance(const mmhp_result* r);
/* 1 if every block meets (1 + epsilon) * ceil(W / k), else 0. */
MMHP_API int mmhp_result_balanced(const mmhp_result* r);
MMHP_API double mmhp_result_runtime(const mmhp_result* r);
MMHP_API uint64_t mmhp_result_generations(const mmhp_result* r);
MMHP_API uint32_t mmhp_result_population_size(const mmhp_result* r);
/* Invocation count of an operator tag (init, C1, C2, C3, M1, M2, M3, M4). */
MMHP_API uint64_t mmhp_result_invocations(const mmhp_result* r, const char* op);
MMHP_API uint32_t mmhp_result_num_nodes(const mmhp_result* r);
MMHP_API const int32_t* mmhp_result_blocks(const mmhp_result* r);

MMHP_API mmhp_status mmhp_result_write_partition(const mmhp_result* r, const char* path);
MMHP_API mmhp_status mmhp_result_write_stats(const mmhp_result* r, const char* instance, const char* path);
MMHP_API mmhp_status mmhp_result_write_convergence(const mmhp_result* r, const char* instance, const char* path);

/* Objective, cut and balance of an arbitrary assignment (one block id per node). */
MMHP_API mmhp_status mmhp_evaluate(const mmhp_hypergraph* h, const int32_t* blocks, int32_t k, double epsilon,
                                   int64_t* km1, int64_t* cut, int* balanced);

/* Aggregates convergence CSVs. mode is "convergence" or "performance"; grid is
   "log" or "union" (convergence only). Each path is a CSV file or a directory. */
MMHP_API mmhp_status mmhp_aggregate(const char* mode, const char* grid, size_t num_series,
                                    const char* const* labels, const char* const* paths, const char* out_path);

MMHP_API const char* mmhp_version(void);

#ifdef __cplusplus
}
#endif

#endif
