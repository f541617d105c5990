#include "harness/run.h"

#include "multilevel/multilevel.h"
#include "partition/partition.h"
#include "util/timer.h"

namespace mmhp {

std::string_view mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::kSingle:
      return "single";
    case RunMode::kRepeated:
      return "repeated";
    case RunMode::kEvolve:
      return "evolve";
  }
  return "?";
}

bool parse_mode(std::string_view text, RunMode& mode) {
  for (RunMode m : {RunMode::kSingle, RunMode::kRepeated, RunMode::kEvolve}) {
    if (text == mode_name(m)) {
      mode = m;
      return true;
    }
  }
  return false;
}

namespace {

struct Tracker {
  RunOutcome& out;
  const TrajectorySink& sink;

  void record(double elapsed, std::uint64_t generation, std::string_view op, Weight best) {
    TrajectoryPoint p{elapsed, generation, std::string(op), best};
    if (sink) sink(p);
    out.trajectory.push_back(std::move(p));
  }
};

bool better(const PartitionResult& a, const PartitionResult& b) {
  if (a.balanced != b.balanced) return a.balanced;
  return a.km1 < b.km1;
}

void run_repeated(Hypergraph& h, const Context& ctx, const RunOptions& opts, Rng& rng, Tracker& tracker,
                  std::vector<BlockID>& blocks) {
  const Stopwatch clock;
  const bool generation_mode = opts.generations > 0;
  std::uint64_t work = 0;
  auto elapsed = [&] { return generation_mode ? static_cast<double>(work) : clock.elapsed_seconds(); };
  auto exhausted = [&] {
    return generation_mode ? work > opts.generations : clock.elapsed_seconds() >= opts.time_limit;
  };

  PartitionResult best;
  bool have_best = false;
  auto offer = [&](const PartitionResult& r, std::string_view op) {
    ++work;
    if (have_best && !better(r, best)) return false;
    best = r;
    have_best = true;
    tracker.record(elapsed(), work - 1, op, r.km1);
    return true;
  };

  do {
    Rng run_rng(rng.next_seed());
    PartitionResult current = partition_single(h, ctx, run_rng);
    offer(current, "single");
    int stale = 0;
    for (int cycle = 0; cycle < opts.max_vcycles && stale < opts.vcycle_patience && !exhausted(); ++cycle) {
      PartitionResult next = vcycle(h, ctx, current.blocks, run_rng);
      const bool improved = next.km1 < current.km1 && next.balanced;
      if (improved || (!current.balanced && next.balanced)) current = std::move(next);
      stale = improved ? 0 : stale + 1;
      offer(current, "vcycle");
    }
  } while (!exhausted());
  blocks = std::move(best.blocks);
}

}  // namespace

RunOutcome run_partitioner(Hypergraph& h, const RunOptions& opts, const TrajectorySink& sink) {
  if (opts.k < 1) throw PartitionError("block count must be positive");
  if (h.current_num_nodes() < static_cast<NodeID>(opts.k)) throw PartitionError("fewer nodes than blocks");
  Context ctx;
  ctx.k = opts.k;
  ctx.epsilon = opts.epsilon;
  Rng rng(opts.seed);
  RunOutcome out;
  Tracker tracker{out, sink};
  const Stopwatch clock;

  switch (opts.mode) {
    case RunMode::kSingle: {
      PartitionResult r = partition_single(h, ctx, rng);
      out.generations = 0;
      out.blocks = std::move(r.blocks);
      tracker.record(opts.generations > 0 ? 1.0 : clock.elapsed_seconds(), 0, "single", r.km1);
      break;
    }
    case RunMode::kRepeated:
      run_repeated(h, ctx, opts, rng, tracker, out.blocks);
      break;
    case RunMode::kEvolve: {
      EvolutionConfig cfg = opts.evolution;
      cfg.time_limit = opts.time_limit;
      cfg.generations = opts.generations;
      EvolutionResult r = evolve(h, ctx, cfg, rng, [&](const ProgressEvent& e) {
        tracker.record(e.elapsed, e.generation, operator_name(e.op), e.best);
      });
      out.blocks = std::move(r.best.blocks);
      out.generations = r.generations;
      out.population_size = r.population_size;
      out.invocations = r.invocations;
      out.accepted = r.accepted;
      break;
    }
  }
  out.runtime = clock.elapsed_seconds();
  out.km1 = connectivity_metric(h, out.blocks);
  out.cut = cut_metric(h, out.blocks);
  out.imbalance = imbalance(h, out.blocks, opts.k);
  out.balanced = is_balanced(h, out.blocks, opts.k, opts.epsilon);
  return out;
}

}  // namespace mmhp
