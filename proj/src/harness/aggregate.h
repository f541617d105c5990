#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "harness/records.h"

namespace mmhp {

struct Series {
  std::string label;
  std::vector<ConvergenceRecord> records;
};

// Reads one convergence CSV, or every *.csv below a directory (sorted by path).
Series load_series(const std::string& label, const std::string& path);

enum class TimeGrid {
  // 10 points per decade spanning all record times.
  kLog,
  // Every distinct record time.
  kUnion,
};

struct ConvergencePoint {
  std::string series;
  double time = 0.0;
  double value = 0.0;
};

// Best-so-far per (instance, seed) as a step function of time; arithmetic
// mean over seeds, then geometric mean over instances of max(mean, 1). A
// grid point is emitted for a series only once every one of its runs has a
// record at or before it.
std::vector<ConvergencePoint> aggregate_convergence(const std::vector<Series>& series, TimeGrid grid);

struct PerformancePoint {
  std::string series;
  double ratio = 0.0;
  double fraction = 0.0;
};

// Per instance (present in every series), each series' mean final objective
// over seeds divided by the best such value. Emits, per series, the sorted
// distinct ratios with the fraction of instances at or below each.
std::vector<PerformancePoint> aggregate_performance(const std::vector<Series>& series);

std::vector<double> log_grid(double lo, double hi);

void write_convergence_points(std::ostream& out, const std::vector<ConvergencePoint>& points);
void write_performance_points(std::ostream& out, const std::vector<PerformancePoint>& points);

}  // namespace mmhp
