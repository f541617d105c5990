#include "harness/records.h"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hgraph/hmetis_io.h"

namespace mmhp {

namespace {

std::string format_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

void write_convergence_csv(std::ostream& out, const std::string& instance, std::uint64_t seed,
                           const std::vector<TrajectoryPoint>& trajectory) {
  out << kConvergenceHeader << '\n';
  for (const auto& p : trajectory) {
    out << instance << ',' << seed << ',' << format_seconds(p.elapsed) << ',' << p.generation << ',' << p.op << ','
        << p.best << '\n';
  }
}

std::vector<ConvergenceRecord> read_convergence_csv(std::istream& in) {
  std::vector<ConvergenceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      if (row != kConvergenceHeader) throw ParseError(line_no, "unexpected convergence header");
      header = true;
      continue;
    }
    const auto f = split(row, ',');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields");
    ConvergenceRecord r;
    r.instance = std::string(f[0]);
    r.op = std::string(f[4]);
    if (!parse_number(f[1], r.seed) || !parse_number(f[2], r.elapsed) || !parse_number(f[3], r.generation) ||
        !parse_number(f[5], r.best)) {
      throw ParseError(line_no, "malformed number");
    }
    records.push_back(std::move(r));
  }
  if (!header) throw ParseError(line_no, "missing convergence header");
  return records;
}

void write_stats(std::ostream& out, const std::string& instance, const RunOptions& opts, const RunOutcome& r) {
  out << "instance = " << instance << '\n';
  out << "mode = " << mode_name(opts.mode) << '\n';
  out << "k = " << opts.k << '\n';
  out << "epsilon = " << opts.epsilon << '\n';
  out << "seed = " << opts.seed << '\n';
  out << "km1 = " << r.km1 << '\n';
  out << "cut = " << r.cut << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.imbalance);
  out << "imbalance = " << buf << '\n';
  out << "balanced = " << (r.balanced ? "true" : "false") << '\n';
  // Generation-count runs must be byte-identical across reruns, so they
  // report no wall-clock values.
  if (opts.generations > 0) {
    out << "clock = generations\n";
  } else {
    out << "clock = wall\n";
    out << "runtime_s = " << format_seconds(r.runtime) << '\n';
    out << "time_limit_s = " << opts.time_limit << '\n';
  }
  out << "generations = " << r.generations << '\n';
  if (opts.mode == RunMode::kEvolve) {
    out << "population_size = " << r.population_size << '\n';
    for (int i = 0; i < kNumOperators; ++i) {
      const std::string_view name = operator_name(static_cast<Operator>(i));
      out << "invocations_" << name << " = " << r.invocations[i] << '\n';
      out << "accepted_" << name << " = " << r.accepted[i] << '\n';
    }
  }
}

std::map<std::string, std::string> read_stats(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    kv[std::string(trim(std::string_view(line).substr(0, eq)))] = std::string(trim(std::string_view(line).substr(eq + 3)));
  }
  return kv;
}

}  // namespace mmhp
