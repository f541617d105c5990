#include "memetic/evolution.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multilevel/multilevel.h"
#include "partition/partition.h"
#include "util/timer.h"

namespace mmhp {

std::optional<OperatorConfig> OperatorConfig::preset(std::string_view name) {
  OperatorConfig c;
  if (name == "kahypar-e") {
    c.combine = {0.5, 0.5, 0.0};
    c.mutate = {0.5, 0.5, 0.0, 0.0};
    c.p_combine = 0.5;
  } else if (name == "mma-m-0.5") {
    c.p_combine = 0.5;
  } else if (name == "mma") {
    // defaults
  } else if (name == "mma-g") {
    c.combine = {0.0, 0.0, 1.0};
  } else if (name == "mma-eq-c") {
    c.combine = {0.33, 0.33, 0.33};
  } else {
    return std::nullopt;
  }
  return c;
}

std::vector<std::string_view> OperatorConfig::preset_names() {
  return {"kahypar-e", "mma-m-0.5", "mma", "mma-g", "mma-eq-c"};
}

bool OperatorConfig::valid() const {
  auto nonneg = [](double x) { return x >= 0.0 && std::isfinite(x); };
  if (!(p_combine >= 0.0 && p_combine <= 1.0) || !nonneg(gamma)) return false;
  if (!std::all_of(combine.begin(), combine.end(), nonneg)) return false;
  if (!std::all_of(mutate.begin(), mutate.end(), nonneg)) return false;
  const double c = std::accumulate(combine.begin(), combine.end(), 0.0);
  const double m = std::accumulate(mutate.begin(), mutate.end(), 0.0);
  return c > 0.0 || m > 0.0;
}

std::size_t population_size_for(double budget, double single_run) {
  if (!(single_run > 0.0)) return 50;
  const double raw = std::round(0.15 * budget / single_run);
  return static_cast<std::size_t>(std::clamp(raw, 3.0, 50.0));
}

std::array<double, 3> effective_combine_weights(const OperatorConfig& cfg, BlockID k) {
  std::array<double, 3> w = cfg.combine;
  if (k == 2) {
    const double rest = w[0] + w[1];
    if (rest > 0.0) {
      w[0] += w[2] * w[0] / rest;
      w[1] += w[2] * w[1] / rest;
    }
    w[2] = 0.0;
  }
  return w;
}

namespace {

Individual single_run(Hypergraph& h, const Context& ctx, std::uint64_t seed) {
  Rng rng(seed);
  PartitionResult r = partition_single(h, ctx, rng);
  return make_individual(h, std::move(r.blocks), ctx.k, ctx.epsilon);
}

bool duplicates_member(const Population& pop, const Individual& ind) {
  return std::any_of(pop.members.begin(), pop.members.end(),
                     [&](const Individual& m) { return distance(m, ind) == 0; });
}

// One random move, or failing that one swap between two blocks, that keeps
// the partition balanced and every block nonempty.
bool perturb(const Hypergraph& h, const Context& ctx, Individual& ind, Rng& rng) {
  if (ctx.k < 2) return false;
  Partition p(h, ctx.k, ind.blocks);
  const Weight bound = max_block_weight(h.total_weight(), ctx.k, ctx.epsilon);
  const std::vector<NodeID> nodes = h.active_nodes();
  auto pick = [&] { return nodes[rng.uniform<std::size_t>(0, nodes.size() - 1)]; };
  for (std::size_t attempt = 0; attempt < 4 * nodes.size(); ++attempt) {
    const NodeID v = pick();
    BlockID target = rng.uniform<BlockID>(0, ctx.k - 2);
    if (target >= p.block_of(v)) ++target;
    if (p.block_size(p.block_of(v)) <= 1 || p.block_weight(target) + h.node_weight(v) > bound) continue;
    p.move_node(v, target);
    ind = make_individual(h, p.blocks(), ctx.k, ctx.epsilon);
    return true;
  }
  for (std::size_t attempt = 0; attempt < 4 * nodes.size(); ++attempt) {
    const NodeID v = pick();
    const NodeID w = pick();
    const BlockID a = p.block_of(v);
    const BlockID b = p.block_of(w);
    if (a == b) continue;
    const Weight shift = h.node_weight(v) - h.node_weight(w);
    if (p.block_weight(b) + shift > bound || p.block_weight(a) - shift > bound) continue;
    std::vector<BlockID> blocks = p.blocks();
    std::swap(blocks[v], blocks[w]);
    ind = make_individual(h, std::move(blocks), ctx.k, ctx.epsilon);
    return true;
  }
  return false;
}

// Adds single-shot individuals until the population has `size` members. An
// individual that still duplicates a member after retries and perturbation is
// dropped; filling ends early after 10 such drops in a row.
void fill_population(Hypergraph& h, const Context& ctx, Population& pop, std::size_t size, Rng& rng,
                     const std::function<void(const Individual&)>& on_created,
                     const std::function<bool()>& out_of_time) {
  int dropped_in_row = 0;
  while (pop.members.size() < size && dropped_in_row < 10) {
    if (out_of_time && pop.members.size() >= 3 && out_of_time()) break;
    Individual ind = single_run(h, ctx, rng.next_seed());
    for (int retry = 0; retry < 5 && duplicates_member(pop, ind); ++retry) {
      ind = single_run(h, ctx, rng.next_seed());
    }
    for (int tries = 0; tries < 100 && duplicates_member(pop, ind); ++tries) {
      if (!perturb(h, ctx, ind, rng)) break;
    }
    if (on_created) on_created(ind);
    if (duplicates_member(pop, ind)) {
      ++dropped_in_row;
      continue;
    }
    dropped_in_row = 0;
    pop.members.push_back(std::move(ind));
  }
}

}  // namespace

Population init_population(Hypergraph& h, const Context& ctx, std::size_t size, Rng& rng,
                           const std::function<void(const Individual&)>& on_created) {
  Population pop;
  fill_population(h, ctx, pop, std::max<std::size_t>(size, 1), rng, on_created, {});
  return pop;
}

bool replace(Population& pop, Individual offspring) {
  if (!offspring.balanced) return false;
  std::size_t evict = pop.members.size();
  std::size_t evict_distance = 0;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const Individual& m = pop.members[i];
    if (fitter(m, offspring)) continue;
    const std::size_t d = distance(m, offspring);
    if (evict == pop.members.size() || d < evict_distance ||
        (d == evict_distance && fitter(pop.members[evict], m))) {
      evict = i;
      evict_distance = d;
    }
  }
  if (evict == pop.members.size()) return false;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    if (i != evict && distance(pop.members[i], offspring) == 0) return false;
  }
  pop.members[evict] = std::move(offspring);
  return true;
}

EvolutionResult evolve(Hypergraph& h, const Context& ctx, const EvolutionConfig& cfg, Rng& rng,
                       const ProgressSink& progress) {
  if (h.current_num_nodes() < static_cast<NodeID>(ctx.k)) throw PartitionError("fewer nodes than blocks");
  const bool generation_mode = cfg.generations > 0;
  const Stopwatch clock;
  std::uint64_t work = 0;
  std::uint64_t generation = 0;
  auto elapsed = [&] { return generation_mode ? static_cast<double>(work) : clock.elapsed_seconds(); };

  EvolutionResult result;
  bool have_best = false;
  auto observe = [&](const Individual& ind, Operator op) {
    if (have_best && !fitter(ind, result.best)) return;
    result.best = ind;
    have_best = true;
    if (progress) progress({elapsed(), generation, op, ind.objective});
  };
  auto on_created = [&](const Individual& ind) {
    ++work;
    ++result.invocations[static_cast<int>(Operator::kInit)];
    observe(ind, Operator::kInit);
  };

  Population pop;
  fill_population(h, ctx, pop, 1, rng, on_created, {});
  std::size_t size = cfg.population_size;
  if (size == 0) {
    size = generation_mode ? population_size_for(static_cast<double>(cfg.generations), 1.0)
                           : population_size_for(cfg.time_limit, clock.elapsed_seconds());
  }
  std::function<bool()> out_of_time;
  if (!generation_mode) out_of_time = [&] { return clock.elapsed_seconds() >= cfg.time_limit; };
  fill_population(h, ctx, pop, size, rng, on_created, out_of_time);
  result.population_size = pop.members.size();

  const std::array<double, 3> combine = effective_combine_weights(cfg.operators, ctx.k);
  const std::vector<double> combine_w(combine.begin(), combine.end());
  const std::vector<double> mutate_w(cfg.operators.mutate.begin(), cfg.operators.mutate.end());
  const bool can_combine = pop.members.size() >= 2 && std::accumulate(combine_w.begin(), combine_w.end(), 0.0) > 0.0;
  const bool can_mutate = std::accumulate(mutate_w.begin(), mutate_w.end(), 0.0) > 0.0;
  if (!can_combine && !can_mutate) {
    result.generations = 0;
    return result;
  }

  while (generation_mode ? generation < cfg.generations : clock.elapsed_seconds() < cfg.time_limit) {
    ++generation;
    const bool do_combine = can_combine && (!can_mutate || rng.flip(cfg.operators.p_combine));
    Operator op;
    Individual offspring;
    if (do_combine) {
      op = static_cast<Operator>(static_cast<int>(Operator::kC1) + static_cast<int>(rng.weighted_index(combine_w)));
      if (op == Operator::kC2) {
        offspring = combine_c2(h, ctx, pop, cfg.operators.gamma, rng);
      } else {
        const auto [a, b] = tournament_select(pop, rng);
        offspring = op == Operator::kC1 ? combine_c1(h, ctx, pop.members[a], pop.members[b], rng)
                                        : combine_c3(h, ctx, pop.members[a], pop.members[b], rng);
      }
    } else {
      op = static_cast<Operator>(static_cast<int>(Operator::kM1) + static_cast<int>(rng.weighted_index(mutate_w)));
      const Individual& parent = pop.members[tournament(pop, rng)];
      switch (op) {
        case Operator::kM1:
          offspring = mutate_m1(h, ctx, parent, rng);
          break;
        case Operator::kM2:
          offspring = mutate_m2(h, ctx, parent, rng);
          break;
        case Operator::kM3:
          offspring = mutate_m3(h, ctx, parent, rng);
          break;
        default:
          offspring = mutate_m4(h, ctx, parent, rng);
          break;
      }
    }
    ++work;
    ++result.invocations[static_cast<int>(op)];
    observe(offspring, op);
    if (replace(pop, std::move(offspring))) ++result.accepted[static_cast<int>(op)];
  }
  result.generations = generation;
  return result;
}

}  // namespace mmhp
