#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "harness/run.h"

namespace mmhp {

inline constexpr const char* kConvergenceHeader = "instance,seed,elapsed_s,generation,operator,best_km1";

struct ConvergenceRecord {
  std::string instance;
  std::uint64_t seed = 0;
  double elapsed = 0.0;
  std::uint64_t generation = 0;
  std::string op;
  Weight best = 0;
};

void write_convergence_csv(std::ostream& out, const std::string& instance, std::uint64_t seed,
                           const std::vector<TrajectoryPoint>& trajectory);
// Throws ParseError on a malformed header or row.
std::vector<ConvergenceRecord> read_convergence_csv(std::istream& in);

// Flat `key = value` lines, in a fixed key order.
void write_stats(std::ostream& out, const std::string& instance, const RunOptions& opts, const RunOutcome& outcome);
std::map<std::string, std::string> read_stats(std::istream& in);

}  // namespace mmhp
