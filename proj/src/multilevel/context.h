#pragma once

#include <cstddef>
#include <limits>

#include "util/types.h"

namespace mmhp {

struct FmConfig {
  // Passes per invocation; passes stop earlier once one yields no improvement.
  int max_rounds = std::numeric_limits<int>::max();
  // A pass ends after this many consecutive moves without a new best prefix.
  std::size_t max_fruitless_moves = 350;
};

struct Context {
  BlockID k = 2;
  double epsilon = 0.03;
  // t: coarsening stops below t·k nodes, and κ = ⌈W / (t·k)⌉.
  double contraction_limit_multiplier = 150.0;
  // Edges with more pins are skipped when rating contraction partners.
  std::size_t rating_edge_size_cap = 1000;
  // Runs of every bisection algorithm in the initial partitioning pool.
  int initial_partitioning_runs = 20;
  // 2-way FM after every bisection run.
  FmConfig initial_fm{std::numeric_limits<int>::max(), 100};
  FmConfig fm;
  // During uncoarsening, FM runs whenever the number of active nodes has
  // grown by this factor since the previous refinement, and at the finest level.
  double refinement_growth = 1.1;
};

}  // namespace mmhp
