// Command-line driver: single partitioning runs, benchmark grids, and
// aggregation of convergence logs.
#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mmhp.h"

extern char** environ;

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kPrecondition = 2, kInfeasible = 3 };

int exit_code_for(mmhp_status s) {
  switch (s) {
    case MMHP_OK:
      return kOk;
    case MMHP_ERR_PRECONDITION:
      return kPrecondition;
    default:
      return kUsage;
  }
}

int report(mmhp_status s, const std::string& context) {
  std::cerr << "mmhp: " << context << ": " << mmhp_last_error() << '\n';
  return exit_code_for(s);
}

struct ScheduleFlags {
  std::string preset = "mma";
  std::optional<double> p_combine;
  std::vector<double> combine;
  std::vector<double> mutate;
  std::optional<double> gamma;
  unsigned population = 0;

  void add_to(CLI::App* app) {
    app->add_option("--preset", preset, "operator schedule: kahypar-e, mma-m-0.5, mma, mma-g, mma-eq-c")
        ->capture_default_str();
    app->add_option("--p-combine", p_combine, "probability of recombination per generation");
    app->add_option("--combine", combine, "weights of C1 C2 C3")->expected(3);
    app->add_option("--mutate", mutate, "weights of M1 M2 M3 M4")->expected(4);
    app->add_option("--gamma", gamma, "frequency damping of C2");
    app->add_option("--population", population, "population size (0: derived from the budget)");
  }

  // Command-line tokens reproducing these flags.
  std::vector<std::string> args() const {
    std::vector<std::string> a{"--preset", preset};
    auto num = [](double x) {
      std::ostringstream s;
      s.precision(17);
      s << x;
      return s.str();
    };
    if (p_combine) a.insert(a.end(), {"--p-combine", num(*p_combine)});
    if (!combine.empty()) {
      a.push_back("--combine");
      for (double w : combine) a.push_back(num(w));
    }
    if (!mutate.empty()) {
      a.push_back("--mutate");
      for (double w : mutate) a.push_back(num(w));
    }
    if (gamma) a.insert(a.end(), {"--gamma", num(*gamma)});
    if (population != 0) a.insert(a.end(), {"--population", std::to_string(population)});
    return a;
  }
};

struct PartitionFlags {
  std::string hgr;
  int k = 0;
  double eps = 0.03;
  std::string mode = "single";
  double time_limit = 0.0;
  std::uint64_t generations = 0;
  std::uint64_t seed = 0;
  int max_vcycles = 100;
  int vcycle_patience = 3;
  std::string instance;
  std::string out_partition;
  std::string out_stats;
  std::string out_csv;
  bool quiet = false;
  ScheduleFlags schedule;
};

void progress_printer(void*, double elapsed, uint64_t generation, const char* op, int64_t best) {
  std::fprintf(stderr, "[%10.3f] gen %-6llu %-6s km1 %lld\n", elapsed, static_cast<unsigned long long>(generation),
               op, static_cast<long long>(best));
}

int cmd_partition(const PartitionFlags& f) {
  mmhp_run_config cfg;
  mmhp_run_config_init(&cfg);
  cfg.k = f.k;
  cfg.epsilon = f.eps;
  if (f.mode == "single") {
    cfg.mode = MMHP_MODE_SINGLE;
  } else if (f.mode == "repeated") {
    cfg.mode = MMHP_MODE_REPEATED;
  } else if (f.mode == "evolve") {
    cfg.mode = MMHP_MODE_EVOLVE;
  } else {
    std::cerr << "mmhp: unknown mode " << f.mode << '\n';
    return kUsage;
  }
  if (cfg.mode != MMHP_MODE_SINGLE && (f.time_limit > 0.0) == (f.generations > 0)) {
    std::cerr << "mmhp: " << f.mode << " mode needs exactly one of --time and --generations\n";
    return kUsage;
  }
  cfg.time_limit = f.time_limit;
  cfg.generations = f.generations;
  cfg.seed = f.seed;
  cfg.max_vcycles = f.max_vcycles;
  cfg.vcycle_patience = f.vcycle_patience;
  if (mmhp_status s = mmhp_run_config_preset(&cfg, f.schedule.preset.c_str()); s != MMHP_OK) {
    return report(s, "schedule");
  }
  if (f.schedule.p_combine) cfg.p_combine = *f.schedule.p_combine;
  for (std::size_t i = 0; i < f.schedule.combine.size(); ++i) cfg.combine[i] = f.schedule.combine[i];
  for (std::size_t i = 0; i < f.schedule.mutate.size(); ++i) cfg.mutate[i] = f.schedule.mutate[i];
  if (f.schedule.gamma) cfg.gamma = *f.schedule.gamma;
  cfg.population_size = f.schedule.population;

  mmhp_hypergraph* h = nullptr;
  if (mmhp_status s = mmhp_hypergraph_read(f.hgr.c_str(), &h); s != MMHP_OK) return report(s, f.hgr);
  mmhp_result* r = nullptr;
  const mmhp_status s = mmhp_run(h, &cfg, f.quiet ? nullptr : progress_printer, nullptr, &r);
  mmhp_hypergraph_free(h);
  if (s != MMHP_OK) return report(s, "partition");

  const std::string instance = f.instance.empty() ? fs::path(f.hgr).stem().string() : f.instance;
  const std::string part_path =
      f.out_partition.empty() ? fs::path(f.hgr).filename().string() + ".part." + std::to_string(f.k) : f.out_partition;
  int code = kOk;
  if (mmhp_status w = mmhp_result_write_partition(r, part_path.c_str()); w != MMHP_OK) code = report(w, part_path);
  if (code == kOk && !f.out_csv.empty()) {
    if (mmhp_status w = mmhp_result_write_convergence(r, instance.c_str(), f.out_csv.c_str()); w != MMHP_OK) {
      code = report(w, f.out_csv);
    }
  }
  if (code == kOk && !f.out_stats.empty()) {
    if (mmhp_status w = mmhp_result_write_stats(r, instance.c_str(), f.out_stats.c_str()); w != MMHP_OK) {
      code = report(w, f.out_stats);
    }
  }
  if (code == kOk && !f.quiet) {
    std::printf("km1 = %lld\ncut = %lld\nimbalance = %.6f\nbalanced = %s\n", static_cast<long long>(mmhp_result_km1(r)),
                static_cast<long long>(mmhp_result_cut(r)), mmhp_result_imbalance(r),
                mmhp_result_balanced(r) ? "true" : "false");
  }
  if (code == kOk && !mmhp_result_balanced(r)) {
    std::cerr << "mmhp: no partition met the balance bound; the emitted partition is flagged infeasible\n";
    code = kInfeasible;
  }
  mmhp_result_free(r);
  return code;
}

// ---------------------------------------------------------------------------
// bench

struct BenchFlags {
  std::vector<std::string> instances;
  std::vector<int> ks;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> modes;
  double eps = 0.03;
  double time_limit = 0.0;
  std::uint64_t generations = 0;
  std::string out;
  int workers = 0;
  ScheduleFlags schedule;
};

struct Cell {
  std::string instance_path;
  std::string instance;
  int k;
  std::string mode;
  std::uint64_t seed;
  fs::path dir;
};

std::map<std::string, std::string> read_stats_file(const fs::path& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

std::optional<pid_t> spawn_cell(const std::string& self, const Cell& c, const BenchFlags& f) {
  std::vector<std::string> args{self,
                                "partition",
                                "--quiet",
                                "--hgr",
                                c.instance_path,
                                "--instance",
                                c.instance,
                                "--k",
                                std::to_string(c.k),
                                "--mode",
                                c.mode,
                                "--seed",
                                std::to_string(c.seed),
                                "--out-partition",
                                (c.dir / "partition.txt").string(),
                                "--out-csv",
                                (c.dir / "convergence.csv").string(),
                                "--out-stats",
                                (c.dir / "stats.txt.tmp").string()};
  std::ostringstream eps;
  eps.precision(17);
  eps << f.eps;
  args.insert(args.end(), {"--eps", eps.str()});
  if (c.mode != "single") {
    if (f.generations > 0) {
      args.insert(args.end(), {"--generations", std::to_string(f.generations)});
    } else {
      std::ostringstream t;
      t.precision(17);
      t << f.time_limit;
      args.insert(args.end(), {"--time", t.str()});
    }
  }
  for (auto& a : f.schedule.args()) args.push_back(a);

  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  const std::string log = (c.dir / "log.txt").string();
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, self.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) return std::nullopt;
  return pid;
}

int cmd_bench(BenchFlags f) {
  if (f.generations == 0 && !(f.time_limit > 0.0)) {
    bool needs_budget = false;
    for (const auto& m : f.modes) needs_budget |= m != "single";
    if (needs_budget) {
      std::cerr << "mmhp: bench needs --time or --generations for repeated and evolve cells\n";
      return kUsage;
    }
  }
  for (const auto& m : f.modes) {
    if (m != "single" && m != "repeated" && m != "evolve") {
      std::cerr << "mmhp: unknown mode " << m << '\n';
      return kUsage;
    }
  }
  for (const auto& p : f.instances) {
    if (!fs::is_regular_file(p)) {
      std::cerr << "mmhp: cannot read instance " << p << '\n';
      return kUsage;
    }
  }
  if (f.workers <= 0) {
    const char* env = std::getenv("MMHP_WORKERS");
    f.workers = env != nullptr ? std::atoi(env) : 1;
    if (f.workers <= 0) f.workers = 1;
  }
  std::error_code ec;
  const std::string self = fs::read_symlink("/proc/self/exe", ec).string();
  if (ec) {
    std::cerr << "mmhp: cannot locate own executable\n";
    return kUsage;
  }

  // Modes are innermost so that cells compared against each other run close
  // together in time and see similar machine load.
  std::vector<Cell> cells;
  for (int k : f.ks) {
    for (auto seed : f.seeds) {
      for (const auto& path : f.instances) {
        for (const auto& mode : f.modes) {
          Cell c{path, fs::path(path).stem().string(), k, mode, seed, {}};
          c.dir = fs::path(f.out) / mode / ("k" + std::to_string(k)) / (c.instance + ".s" + std::to_string(seed));
          cells.push_back(std::move(c));
        }
      }
    }
  }

  std::map<pid_t, std::size_t> running;
  std::vector<int> exit_status(cells.size(), -1);
  std::size_t next = 0;
  std::size_t skipped = 0;
  auto reap = [&] {
    int status = 0;
    const pid_t pid = waitpid(-1, &status, 0);
    if (pid <= 0) return;
    const std::size_t i = running.at(pid);
    running.erase(pid);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    exit_status[i] = code;
    const Cell& c = cells[i];
    if (code == kOk || code == kInfeasible) {
      fs::rename(c.dir / "stats.txt.tmp", c.dir / "stats.txt", ec);
      if (ec) exit_status[i] = kUsage;
    }
    std::cerr << "mmhp: cell " << c.dir.string() << " exit " << exit_status[i] << '\n';
  };
  while (next < cells.size() || !running.empty()) {
    while (next < cells.size() && running.size() < static_cast<std::size_t>(f.workers)) {
      const std::size_t i = next++;
      const Cell& c = cells[i];
      if (fs::exists(c.dir / "stats.txt")) {
        exit_status[i] = read_stats_file(c.dir / "stats.txt")["balanced"] == "false" ? kInfeasible : kOk;
        ++skipped;
        continue;
      }
      fs::create_directories(c.dir, ec);
      const auto pid = ec ? std::nullopt : spawn_cell(self, c, f);
      if (!pid) {
        exit_status[i] = kUsage;
        std::cerr << "mmhp: cannot start cell " << c.dir.string() << '\n';
        continue;
      }
      running[*pid] = i;
    }
    if (!running.empty()) reap();
  }

  const fs::path results = fs::path(f.out) / "results.csv";
  std::ofstream table(results, std::ios::trunc);
  table << "instance,k,mode,seed,status,km1,cut,imbalance,balanced,runtime_s\n";
  std::size_t failed = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    const int code = exit_status[i];
    std::string status = code == kOk ? "ok" : code == kInfeasible ? "infeasible" : "failed:" + std::to_string(code);
    if (code != kOk && code != kInfeasible) ++failed;
    auto kv = code == kOk || code == kInfeasible ? read_stats_file(c.dir / "stats.txt")
                                                 : std::map<std::string, std::string>{};
    table << c.instance << ',' << c.k << ',' << c.mode << ',' << c.seed << ',' << status << ',' << kv["km1"] << ','
          << kv["cut"] << ',' << kv["imbalance"] << ',' << kv["balanced"] << ',' << kv["runtime_s"] << '\n';
  }
  table.close();
  if (!table) {
    std::cerr << "mmhp: cannot write " << results.string() << '\n';
    return kUsage;
  }
  std::cerr << "mmhp: " << cells.size() << " cells, " << skipped << " reused, " << failed << " failed; table "
            << results.string() << '\n';
  return failed == 0 ? kOk : kUsage;
}

// ---------------------------------------------------------------------------
// aggregate

int cmd_aggregate(const std::string& mode, const std::string& grid, const std::vector<std::string>& series,
                  const std::string& out) {
  std::vector<std::string> labels;
  std::vector<std::string> paths;
  for (const auto& s : series) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      std::cerr << "mmhp: --series expects label=path, got " << s << '\n';
      return kUsage;
    }
    labels.push_back(s.substr(0, eq));
    paths.push_back(s.substr(eq + 1));
  }
  std::vector<const char*> l;
  std::vector<const char*> p;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    l.push_back(labels[i].c_str());
    p.push_back(paths[i].c_str());
  }
  const mmhp_status s = mmhp_aggregate(mode.c_str(), grid.c_str(), l.size(), l.data(), p.data(), out.c_str());
  if (s != MMHP_OK) return report(s, "aggregate");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmhp: multilevel memetic hypergraph partitioner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mmhp_version()));

  PartitionFlags pf;
  CLI::App* partition = app.add_subcommand("partition", "partition one hypergraph");
  partition->add_option("--hgr", pf.hgr, "hypergraph in hMetis format")->required();
  partition->add_option("--k", pf.k, "number of blocks")->required()->check(CLI::Range(2, 1 << 30));
  partition->add_option("--eps", pf.eps, "imbalance parameter")->capture_default_str()->check(CLI::NonNegativeNumber);
  partition->add_option("--mode", pf.mode, "single, repeated or evolve")->capture_default_str();
  partition->add_option("--time", pf.time_limit, "time budget in seconds")->check(CLI::PositiveNumber);
  partition->add_option("--generations", pf.generations, "deterministic budget in generations");
  partition->add_option("--seed", pf.seed, "random seed")->capture_default_str();
  partition->add_option("--max-vcycles", pf.max_vcycles, "repeated mode: V-cycles per partition")->capture_default_str();
  partition->add_option("--vcycle-patience", pf.vcycle_patience,
                        "repeated mode: consecutive non-improving V-cycles before a fresh partition")
      ->capture_default_str();
  partition->add_option("--instance", pf.instance, "instance label in outputs (default: file stem)");
  partition->add_option("--out-partition", pf.out_partition, "partition file (default: <file>.part.<k>)");
  partition->add_option("--out-stats", pf.out_stats, "key = value summary");
  partition->add_option("--out-csv", pf.out_csv, "convergence CSV");
  partition->add_flag("--quiet", pf.quiet, "no progress or summary output");
  std::string objective = "km1";
  partition->add_option("--objective", objective, "reported objective; both km1 and cut are always written")
      ->check(CLI::IsMember({"km1", "cut"}));
  pf.schedule.add_to(partition);

  BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "run an instance x k x seed x mode grid");
  bench->add_option("--instances", bf.instances, "hypergraph files")->required();
  bench->add_option("--k", bf.ks, "block counts")->required();
  bench->add_option("--seeds", bf.seeds, "seeds")->required();
  bench->add_option("--modes", bf.modes, "modes")->required();
  bench->add_option("--eps", bf.eps, "imbalance parameter")->capture_default_str();
  bench->add_option("--time", bf.time_limit, "time budget per cell in seconds");
  bench->add_option("--generations", bf.generations, "deterministic budget per cell");
  bench->add_option("--out", bf.out, "output directory")->required();
  bench->add_option("--workers", bf.workers, "parallel cells (default: $MMHP_WORKERS or 1)");
  bf.schedule.add_to(bench);

  std::string agg_mode = "convergence";
  std::string agg_grid = "log";
  std::vector<std::string> agg_series;
  std::string agg_out;
  CLI::App* aggregate = app.add_subcommand("aggregate", "aggregate convergence CSVs");
  aggregate->add_option("--mode", agg_mode, "convergence or performance")->capture_default_str();
  aggregate->add_option("--grid", agg_grid, "log or union time grid")->capture_default_str();
  aggregate->add_option("--series", agg_series, "label=path (CSV file or directory), repeatable")->required();
  aggregate->add_option("--out", agg_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (*partition) return cmd_partition(pf);
  if (*bench) return cmd_bench(bf);
  return cmd_aggregate(agg_mode, agg_grid, agg_series, agg_out);
}
