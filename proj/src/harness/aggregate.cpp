#include "harness/aggregate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "hgraph/hmetis_io.h"

namespace mmhp {

namespace fs = std::filesystem;

Series load_series(const std::string& label, const std::string& path) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .csv files under " + path);
  } else {
    files.emplace_back(path);
  }
  Series s;
  s.label = label;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw IoError("cannot open " + f.string());
    auto records = read_convergence_csv(in);
    s.records.insert(s.records.end(), records.begin(), records.end());
  }
  return s;
}

namespace {

struct Run {
  std::vector<std::pair<double, Weight>> steps;  // time ascending, best non-increasing

  bool defined_at(double t) const { return !steps.empty() && steps.front().first <= t; }
  Weight at(double t) const {
    auto it = std::upper_bound(steps.begin(), steps.end(), t,
                               [](double x, const std::pair<double, Weight>& s) { return x < s.first; });
    return std::prev(it)->second;
  }
  Weight final_value() const { return steps.back().second; }
};

// instance -> seed -> run
using RunTable = std::map<std::string, std::map<std::uint64_t, Run>>;

RunTable build_runs(const Series& s) {
  RunTable table;
  std::map<std::pair<std::string, std::uint64_t>, std::vector<std::pair<double, Weight>>> raw;
  for (const auto& r : s.records) raw[{r.instance, r.seed}].emplace_back(r.elapsed, r.best);
  for (auto& [key, points] : raw) {
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Run run;
    for (const auto& [t, v] : points) {
      const Weight best = run.steps.empty() ? v : std::min(v, run.steps.back().second);
      if (!run.steps.empty() && run.steps.back().first == t) {
        run.steps.back().second = best;
      } else {
        run.steps.emplace_back(t, best);
      }
    }
    table[key.first][key.second] = std::move(run);
  }
  return table;
}

double geometric_mean(const std::vector<double>& values) {
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(std::max(v, 1.0));
  return std::exp(log_sum / static_cast<double>(values.size()));
}

}  // namespace

std::vector<double> log_grid(double lo, double hi) {
  std::vector<double> grid;
  if (!(lo > 0.0) || hi < lo) return grid;
  const auto first = static_cast<long>(std::floor(10.0 * std::log10(lo) + 1e-9));
  const auto last = static_cast<long>(std::ceil(10.0 * std::log10(hi) - 1e-9));
  for (long i = first; i <= last; ++i) grid.push_back(std::pow(10.0, static_cast<double>(i) / 10.0));
  return grid;
}

std::vector<ConvergencePoint> aggregate_convergence(const std::vector<Series>& series, TimeGrid grid_kind) {
  std::vector<RunTable> tables;
  std::set<double> times;
  for (const auto& s : series) {
    tables.push_back(build_runs(s));
    for (const auto& r : s.records) times.insert(r.elapsed);
  }
  std::vector<double> grid;
  if (grid_kind == TimeGrid::kUnion) {
    grid.assign(times.begin(), times.end());
  } else {
    double lo = std::numeric_limits<double>::infinity();
    for (double t : times) {
      if (t > 0.0) lo = std::min(lo, t);
    }
    if (std::isfinite(lo)) grid = log_grid(lo, *times.rbegin());
    if (!times.empty() && *times.begin() <= 0.0) grid.insert(grid.begin(), 0.0);
  }

  std::vector<ConvergencePoint> points;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const RunTable& table = tables[i];
    if (table.empty()) continue;
    for (double t : grid) {
      std::vector<double> per_instance;
      bool defined = true;
      for (const auto& [instance, runs] : table) {
        double sum = 0.0;
        for (const auto& [seed, run] : runs) {
          if (!run.defined_at(t)) {
            defined = false;
            break;
          }
          sum += static_cast<double>(run.at(t));
        }
        if (!defined) break;
        per_instance.push_back(sum / static_cast<double>(runs.size()));
      }
      if (defined) points.push_back({series[i].label, t, geometric_mean(per_instance)});
    }
  }
  return points;
}

std::vector<PerformancePoint> aggregate_performance(const std::vector<Series>& series) {
  std::vector<std::map<std::string, double>> finals;
  for (const auto& s : series) {
    std::map<std::string, double> f;
    for (const auto& [instance, runs] : build_runs(s)) {
      double sum = 0.0;
      for (const auto& [seed, run] : runs) sum += static_cast<double>(run.final_value());
      f[instance] = sum / static_cast<double>(runs.size());
    }
    finals.push_back(std::move(f));
  }
  std::vector<std::string> instances;
  if (!finals.empty()) {
    for (const auto& [instance, v] : finals.front()) {
      const bool everywhere =
          std::all_of(finals.begin(), finals.end(), [&](const auto& f) { return f.count(instance) > 0; });
      if (everywhere) instances.push_back(instance);
    }
  }
  std::vector<PerformancePoint> points;
  if (instances.empty()) return points;
  std::vector<std::vector<double>> ratios(series.size());
  for (const auto& instance : instances) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : finals) best = std::min(best, f.at(instance));
    for (std::size_t i = 0; i < series.size(); ++i) {
      const double v = finals[i].at(instance);
      double r;
      if (best > 0.0) {
        r = v / best;
      } else {
        r = v == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
      }
      ratios[i].push_back(r);
    }
  }
  const auto n = static_cast<double>(instances.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    auto& rs = ratios[i];
    std::sort(rs.begin(), rs.end());
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (j + 1 < rs.size() && rs[j + 1] == rs[j]) continue;
      points.push_back({series[i].label, rs[j], static_cast<double>(j + 1) / n});
    }
  }
  return points;
}

void write_convergence_points(std::ostream& out, const std::vector<ConvergencePoint>& points) {
  out << "series,time_s,geomean_best_km1\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.6f,%.10g", p.time, p.value);
    out << p.series << ',' << buf << '\n';
  }
}

void write_performance_points(std::ostream& out, const std::vector<PerformancePoint>& points) {
  out << "series,ratio,fraction\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g", p.ratio, p.fraction);
    out << p.series << ',' << buf << '\n';
  }
}

}  // namespace mmhp
