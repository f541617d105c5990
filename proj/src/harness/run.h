#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hgraph/hypergraph.h"
#include "memetic/evolution.h"

namespace mmhp {

enum class RunMode { kSingle, kRepeated, kEvolve };

struct RunOptions {
  BlockID k = 2;
  double epsilon = 0.03;
  RunMode mode = RunMode::kSingle;
  double time_limit = 0.0;
  // Generation-count mode for repeated and evolve runs: every multilevel
  // invocation counts as one unit of time and the run ends after this many
  // generations (repeated: this many invocations after the first).
  std::uint64_t generations = 0;
  std::uint64_t seed = 0;
  EvolutionConfig evolution;
  // Repeated mode: V-cycles per fresh partition, and how many consecutive
  // non-improving V-cycles end that sequence early.
  int max_vcycles = 100;
  int vcycle_patience = 3;
};

// One best-so-far improvement; op is an operator tag such as "init", "C1",
// "single" or "vcycle".
struct TrajectoryPoint {
  double elapsed = 0.0;
  std::uint64_t generation = 0;
  std::string op;
  Weight best = 0;
};

struct RunOutcome {
  std::vector<BlockID> blocks;
  Weight km1 = 0;
  Weight cut = 0;
  double imbalance = 0.0;
  bool balanced = true;
  double runtime = 0.0;
  std::uint64_t generations = 0;
  std::size_t population_size = 0;
  std::array<std::uint64_t, kNumOperators> invocations{};
  std::array<std::uint64_t, kNumOperators> accepted{};
  std::vector<TrajectoryPoint> trajectory;
};

using TrajectorySink = std::function<void(const TrajectoryPoint&)>;

// Throws PartitionError if h has fewer nodes than k.
RunOutcome run_partitioner(Hypergraph& h, const RunOptions& opts, const TrajectorySink& sink = {});

std::string_view mode_name(RunMode mode);
bool parse_mode(std::string_view text, RunMode& mode);

}  // namespace mmhp
