#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmock/gmock.h"
#include "harness/aggregate.h"
#include "harness/records.h"
#include "harness/run.h"
#include "hgraph/hmetis_io.h"
#include "support/oracles.h"

using ::testing::AllOf;
using ::testing::Contains;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::Eq;
using ::testing::Field;
using ::testing::IsEmpty;
using ::testing::Le;
using ::testing::SizeIs;

namespace mmhp {
namespace {

ConvergenceRecord record(std::string instance, std::uint64_t seed, double t, Weight best) {
  return {std::move(instance), seed, t, 0, "init", best};
}

TEST(AConvergenceCsv, RoundTripsTrajectory) {
  const std::vector<TrajectoryPoint> trajectory{{0.5, 0, "init", 40}, {1.25, 3, "C3", 31}};
  std::stringstream io;
  write_convergence_csv(io, "ibm01", 7, trajectory);
  EXPECT_THAT(io.str().substr(0, io.str().find('\n')), Eq(kConvergenceHeader));
  const auto rows = read_convergence_csv(io);
  ASSERT_THAT(rows, SizeIs(2));
  EXPECT_THAT(rows[1].instance, Eq("ibm01"));
  EXPECT_THAT(rows[1].seed, Eq(7u));
  EXPECT_THAT(rows[1].elapsed, DoubleNear(1.25, 1e-9));
  EXPECT_THAT(rows[1].generation, Eq(3u));
  EXPECT_THAT(rows[1].op, Eq("C3"));
  EXPECT_THAT(rows[1].best, Eq(31));
}

TEST(AConvergenceCsv, RejectsMalformedInput) {
  std::istringstream bad_header("instance,seed\n");
  EXPECT_THROW(read_convergence_csv(bad_header), ParseError);
  std::istringstream bad_row(std::string(kConvergenceHeader) + "\nx,1,abc,0,init,5\n");
  EXPECT_THROW(read_convergence_csv(bad_row), ParseError);
}

TEST(AStatsDocument, RoundTripsKeyValues) {
  RunOptions opts;
  opts.k = 4;
  opts.mode = RunMode::kEvolve;
  opts.generations = 12;
  opts.seed = 3;
  RunOutcome outcome;
  outcome.km1 = 17;
  outcome.cut = 15;
  outcome.generations = 12;
  outcome.population_size = 5;
  std::stringstream io;
  write_stats(io, "inst", opts, outcome);
  const auto stats = read_stats(io);
  EXPECT_THAT(stats.at("instance"), Eq("inst"));
  EXPECT_THAT(stats.at("mode"), Eq("evolve"));
  EXPECT_THAT(stats.at("km1"), Eq("17"));
  EXPECT_THAT(stats.at("cut"), Eq("15"));
  EXPECT_THAT(stats.at("clock"), Eq("generations"));
  EXPECT_THAT(stats.at("population_size"), Eq("5"));
  EXPECT_THAT(stats.count("runtime_s"), Eq(0u));
}

TEST(AStatsDocument, ReportsWallClockFieldsInTimedRuns) {
  RunOptions opts;
  opts.mode = RunMode::kRepeated;
  opts.time_limit = 2.0;
  std::stringstream io;
  write_stats(io, "inst", opts, RunOutcome{});
  const auto stats = read_stats(io);
  EXPECT_THAT(stats.at("clock"), Eq("wall"));
  EXPECT_THAT(stats.count("runtime_s"), Eq(1u));
  EXPECT_THAT(stats.count("time_limit_s"), Eq(1u));
}

TEST(AConvergenceAggregate, ReproducesSingleTrajectory) {
  const Series s{"mma", {record("a", 1, 1.0, 50), record("a", 1, 2.5, 40), record("a", 1, 7.0, 30)}};
  const auto points = aggregate_convergence({s}, TimeGrid::kUnion);
  ASSERT_THAT(points, SizeIs(3));
  EXPECT_THAT(points[0].value, DoubleNear(50, 1e-9));
  EXPECT_THAT(points[1].time, DoubleNear(2.5, 1e-9));
  EXPECT_THAT(points[1].value, DoubleNear(40, 1e-9));
  EXPECT_THAT(points[2].value, DoubleNear(30, 1e-9));
}

TEST(AConvergenceAggregate, TakesGeometricMeanOverInstances) {
  const Series s{"mma", {record("a", 1, 1.0, 10), record("b", 1, 1.0, 1000)}};
  const auto points = aggregate_convergence({s}, TimeGrid::kUnion);
  ASSERT_THAT(points, SizeIs(1));
  EXPECT_THAT(points[0].value, DoubleNear(100, 1e-9));
}

TEST(AConvergenceAggregate, TakesArithmeticMeanOverSeeds) {
  const Series s{"mma", {record("a", 1, 1.0, 10), record("a", 2, 1.0, 30)}};
  const auto points = aggregate_convergence({s}, TimeGrid::kUnion);
  ASSERT_THAT(points, SizeIs(1));
  EXPECT_THAT(points[0].value, DoubleNear(20, 1e-9));
}

TEST(AConvergenceAggregate, WaitsForEveryRunToStart) {
  const Series s{"mma", {record("a", 1, 1.0, 10), record("a", 2, 3.0, 30), record("a", 1, 4.0, 8)}};
  const auto points = aggregate_convergence({s}, TimeGrid::kUnion);
  ASSERT_THAT(points, SizeIs(2));
  EXPECT_THAT(points[0].time, DoubleNear(3.0, 1e-9));
  EXPECT_THAT(points[0].value, DoubleNear(20, 1e-9));
  EXPECT_THAT(points[1].value, DoubleNear(19, 1e-9));
}

TEST(AConvergenceAggregate, ClampsZeroObjectivesToOne) {
  const Series s{"mma", {record("a", 1, 1.0, 0), record("b", 1, 1.0, 100)}};
  const auto points = aggregate_convergence({s}, TimeGrid::kUnion);
  EXPECT_THAT(points[0].value, DoubleNear(10, 1e-9));
}

TEST(ALogGrid, HasTenPointsPerDecade) {
  const auto grid = log_grid(1.0, 100.0);
  ASSERT_THAT(grid, SizeIs(21));
  EXPECT_THAT(grid.front(), DoubleNear(1.0, 1e-9));
  EXPECT_THAT(grid[10], DoubleNear(10.0, 1e-9));
  EXPECT_THAT(grid.back(), DoubleNear(100.0, 1e-9));
}

TEST(APerformanceAggregate, PassesThroughRatioFractionPairs) {
  const Series a{"A", {record("x", 1, 9, 10), record("y", 1, 9, 10), record("z", 1, 9, 15)}};
  const Series b{"B", {record("x", 1, 9, 20), record("y", 1, 9, 20), record("z", 1, 9, 10)}};
  const auto points = aggregate_performance({a, b});
  std::vector<std::pair<double, double>> curve_a;
  std::vector<std::pair<double, double>> curve_b;
  for (const auto& p : points) (p.series == "A" ? curve_a : curve_b).emplace_back(p.ratio, p.fraction);
  ASSERT_THAT(curve_a, SizeIs(2));
  EXPECT_THAT(curve_a[0].first, DoubleNear(1.0, 1e-12));
  EXPECT_THAT(curve_a[0].second, DoubleNear(2.0 / 3.0, 1e-12));
  EXPECT_THAT(curve_a[1].first, DoubleNear(1.5, 1e-12));
  EXPECT_THAT(curve_a[1].second, DoubleNear(1.0, 1e-12));
  ASSERT_THAT(curve_b, SizeIs(2));
  EXPECT_THAT(curve_b[1].first, DoubleNear(2.0, 1e-12));
}

TEST(APerformanceAggregate, GivesFlatCurveToDominantSeries) {
  const Series a{"A", {record("x", 1, 1, 5), record("y", 1, 1, 7)}};
  const auto points = aggregate_performance({a});
  ASSERT_THAT(points, SizeIs(1));
  EXPECT_THAT(points[0].ratio, DoubleNear(1.0, 1e-12));
  EXPECT_THAT(points[0].fraction, DoubleNear(1.0, 1e-12));
}

TEST(APerformanceAggregate, UsesFinalRecordOfEachRun) {
  const Series a{"A", {record("x", 1, 1, 50), record("x", 1, 2, 10), record("x", 2, 1, 30)}};
  const Series b{"B", {record("x", 1, 1, 40)}};
  const auto points = aggregate_performance({a, b});
  // A: mean(10, 30) = 20 beats B's 40.
  EXPECT_THAT(points, Contains(AllOf(Field(&PerformancePoint::series, "B"),
                                     Field(&PerformancePoint::ratio, DoubleNear(2.0, 1e-12)))));
}

TEST(ASeriesLoader, ReadsDirectoriesRecursively) {
  const auto dir = std::filesystem::temp_directory_path() / "mmhp_series_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "k2" / "a.s1");
  std::filesystem::create_directories(dir / "k2" / "b.s1");
  {
    std::ofstream out(dir / "k2" / "a.s1" / "convergence.csv");
    write_convergence_csv(out, "a", 1, {{0.1, 0, "init", 9}});
  }
  {
    std::ofstream out(dir / "k2" / "b.s1" / "convergence.csv");
    write_convergence_csv(out, "b", 1, {{0.1, 0, "init", 4}, {0.2, 1, "M1", 3}});
  }
  const Series s = load_series("x", dir.string());
  EXPECT_THAT(s.records, SizeIs(3));
  EXPECT_THAT(s.records[0].instance, Eq("a"));
  std::filesystem::remove_all(dir);
}

class ARunner : public ::testing::Test {
 protected:
  Hypergraph h = oracle::h0();
};

TEST_F(ARunner, PartitionsH0Optimally) {
  RunOptions opts;
  opts.epsilon = 0.0;
  opts.seed = 1;
  const RunOutcome out = run_partitioner(h, opts);
  EXPECT_THAT(out.km1, Eq(2));
  EXPECT_THAT(out.cut, Eq(2));
  EXPECT_TRUE(out.balanced);
  EXPECT_THAT(out.trajectory, SizeIs(1));
}

TEST_F(ARunner, RecordsMonotoneTrajectoryInRepeatedMode) {
  std::mt19937_64 gen(1);
  Hypergraph g = oracle::random_hypergraph(gen, {.min_nodes = 400, .max_nodes = 400, .min_edges = 700,
                                                 .max_edges = 700, .max_edge_size = 5});
  RunOptions opts;
  opts.k = 4;
  opts.mode = RunMode::kRepeated;
  opts.generations = 10;
  opts.seed = 2;
  std::vector<TrajectoryPoint> seen;
  const RunOutcome out = run_partitioner(g, opts, [&](const TrajectoryPoint& p) { seen.push_back(p); });
  ASSERT_FALSE(out.trajectory.empty());
  EXPECT_THAT(seen.size(), Eq(out.trajectory.size()));
  for (std::size_t i = 1; i < out.trajectory.size(); ++i) {
    EXPECT_THAT(out.trajectory[i].best, Le(out.trajectory[i - 1].best));
  }
  EXPECT_THAT(out.trajectory.back().best, Eq(out.km1));
  EXPECT_THAT(out.km1, Eq(oracle::km1(g, out.blocks)));
}

TEST_F(ARunner, ParsesModeNames) {
  RunMode mode{};
  for (RunMode m : {RunMode::kSingle, RunMode::kRepeated, RunMode::kEvolve}) {
    ASSERT_TRUE(parse_mode(mode_name(m), mode));
    EXPECT_THAT(mode, Eq(m));
  }
  EXPECT_FALSE(parse_mode("bogus", mode));
}

}  // namespace
}  // namespace mmhp
