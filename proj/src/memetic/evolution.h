#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hgraph/hypergraph.h"
#include "memetic/individual.h"
#include "memetic/operators.h"
#include "multilevel/context.h"
#include "util/random.h"

namespace mmhp {

struct OperatorConfig {
  // Probability that a generation recombines rather than mutates.
  double p_combine = 0.8;
  // Relative weights of C1, C2, C3.
  std::array<double, 3> combine{0.4, 0.2, 0.4};
  // Relative weights of M1, M2, M3, M4.
  std::array<double, 4> mutate{0.25, 0.25, 0.25, 0.25};
  // Frequency damping of the C2 rating.
  double gamma = 0.5;

  // Named schedules: "kahypar-e", "mma-m-0.5", "mma", "mma-g", "mma-eq-c".
  static std::optional<OperatorConfig> preset(std::string_view name);
  static std::vector<std::string_view> preset_names();
  // Non-negative weights with at least one usable group.
  bool valid() const;
};

struct EvolutionConfig {
  OperatorConfig operators;
  // Wall-clock budget in seconds; used when generations is 0.
  double time_limit = 0.0;
  // Generation-count mode: runs exactly this many generations and reports
  // elapsed time as the number of multilevel runs performed so far, which
  // makes every output a function of the seed alone.
  std::uint64_t generations = 0;
  // Overrides the population sizing rule when nonzero.
  std::size_t population_size = 0;
};

struct ProgressEvent {
  double elapsed = 0.0;
  std::uint64_t generation = 0;
  Operator op = Operator::kInit;
  Weight best = 0;
};
using ProgressSink = std::function<void(const ProgressEvent&)>;

struct EvolutionResult {
  Individual best;
  std::size_t population_size = 0;
  std::uint64_t generations = 0;
  std::array<std::uint64_t, kNumOperators> invocations{};
  std::array<std::uint64_t, kNumOperators> accepted{};
};

// clamp(round(0.15·budget / τ), 3, 50) where τ is the duration of one
// single-shot run in the same unit as the budget.
std::size_t population_size_for(double budget, double single_run);

// Builds up to `size` distinct individuals by independent single-shot runs.
// A run that duplicates a member (distance 0) is repeated with a fresh seed up
// to five times, then perturbed by random balanced moves or swaps; if it is
// still a duplicate it is dropped. Filling ends early after ten drops in a
// row, so degenerate instances can yield fewer members. on_created sees every
// individual produced, dropped ones included.
Population init_population(Hypergraph& h, const Context& ctx, std::size_t size, Rng& rng,
                           const std::function<void(const Individual&)>& on_created = {});

// Steady-state replacement. Candidates are members not fitter than the
// offspring; the one closest to it is evicted (ties: higher objective, then
// lower index). The offspring is discarded if no candidate exists, if it is
// unbalanced, or if it duplicates a member that would survive.
bool replace(Population& pop, Individual offspring);

// Effective combine weights: for k = 2 the C3 weight moves to C1 and C2 in
// proportion to their weights.
std::array<double, 3> effective_combine_weights(const OperatorConfig& cfg, BlockID k);

EvolutionResult evolve(Hypergraph& h, const Context& ctx, const EvolutionConfig& cfg, Rng& rng,
                       const ProgressSink& progress = {});

}  // namespace mmhp
