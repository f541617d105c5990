#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "gmock/gmock.h"

using ::testing::Eq;
using ::testing::HasSubstr;
using ::testing::Not;
using ::testing::SizeIs;

namespace fs = std::filesystem;

namespace {

const std::string kCli = MMHP_CLI_PATH;
const fs::path kFixtures = MMHP_FIXTURE_DIR;

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TheCli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("mmhp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string partition_h0(const std::string& tag, const std::string& mode = "--mode single") {
    const fs::path part = dir / (tag + ".part");
    const fs::path stats = dir / (tag + ".stats");
    const fs::path csv = dir / (tag + ".csv");
    EXPECT_THAT(run("partition --hgr " + (kFixtures / "h0.hgr").string() +
                    " --k 2 --eps 0 --seed 1 --quiet " + mode + " --out-partition " + part.string() +
                    " --out-stats " + stats.string() + " --out-csv " + csv.string()),
                Eq(0));
    return slurp(part) + "|" + slurp(stats) + "|" + slurp(csv);
  }

  fs::path dir;
};

TEST_F(TheCli, PartitionsH0Optimally) {
  const std::string out = partition_h0("a");
  EXPECT_THAT(out, HasSubstr("km1 = 2"));
  const std::string part = slurp(dir / "a.part");
  EXPECT_TRUE(part == "0\n0\n1\n1\n" || part == "1\n1\n0\n0\n") << part;
}

TEST_F(TheCli, ProducesIdenticalPartitionForSameSeed) {
  partition_h0("a");
  partition_h0("b");
  EXPECT_THAT(slurp(dir / "a.part"), Eq(slurp(dir / "b.part")));
}

TEST_F(TheCli, ProducesIdenticalFilesInGenerationMode) {
  const std::string evolve = "--mode evolve --generations 20";
  EXPECT_THAT(partition_h0("a", evolve), Eq(partition_h0("b", evolve)));
  EXPECT_THAT(slurp(dir / "a.stats"), Not(HasSubstr("runtime_s")));
}

TEST_F(TheCli, FailsCleanlyWhenKExceedsNodes) {
  const fs::path part = dir / "p";
  EXPECT_THAT(run("partition --hgr " + (kFixtures / "h0.hgr").string() + " --k 5 --quiet --out-partition " +
                  part.string() + " --out-stats " + (dir / "s").string()),
              Eq(2));
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST_F(TheCli, FailsOnUsageAndParseErrors) {
  EXPECT_THAT(run("partition --k 2"), Eq(1));
  EXPECT_THAT(run("partition --hgr " + (kFixtures / "corrupt" / "truncated.hgr").string() + " --k 2 --quiet"),
              Eq(1));
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST_F(TheCli, RunsAndResumesBenchGrid) {
  const std::string args = "bench --instances " + (kFixtures / "h0.hgr").string() + " " +
                           (kFixtures / "weighted.hgr").string() +
                           " --k 2 --seeds 1 2 3 --modes repeated evolve --eps 0.5 --generations 3 --workers 2 --out " +
                           (dir / "grid").string();
  ASSERT_THAT(run(args), Eq(0));
  int cells = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "grid")) {
    if (entry.path().filename() == "convergence.csv") ++cells;
  }
  EXPECT_THAT(cells, Eq(12));
  const std::string table = slurp(dir / "grid" / "results.csv");
  EXPECT_THAT(std::count(table.begin(), table.end(), '\n'), Eq(13));

  const fs::path redo = dir / "grid" / "evolve" / "k2" / "h0.s2";
  const fs::path kept = dir / "grid" / "evolve" / "k2" / "h0.s1" / "stats.txt";
  const auto kept_time = fs::last_write_time(kept);
  fs::remove_all(redo);
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  ASSERT_THAT(run(args), Eq(0));
  EXPECT_TRUE(fs::exists(redo / "stats.txt"));
  EXPECT_THAT(fs::last_write_time(kept), Eq(kept_time));
}

TEST_F(TheCli, AggregatesConvergenceAndPerformance) {
  const fs::path a = dir / "a.csv";
  const fs::path b = dir / "b.csv";
  std::ofstream(a) << "instance,seed,elapsed_s,generation,operator,best_km1\nx,1,1.0,0,init,10\ny,1,1.0,0,init,1000\n";
  std::ofstream(b) << "instance,seed,elapsed_s,generation,operator,best_km1\nx,1,1.0,0,init,20\ny,1,1.0,0,init,500\n";
  ASSERT_THAT(run("aggregate --mode convergence --grid union --series A=" + a.string() + " --out " +
                  (dir / "conv.csv").string()),
              Eq(0));
  const std::string conv = slurp(dir / "conv.csv");
  EXPECT_THAT(conv, HasSubstr("series,time_s,geomean_best_km1"));
  EXPECT_THAT(conv, HasSubstr("A,1"));
  EXPECT_THAT(conv, HasSubstr(",100"));
  ASSERT_THAT(run("aggregate --mode performance --series A=" + a.string() + " --series B=" + b.string() +
                  " --out " + (dir / "perf.csv").string()),
              Eq(0));
  EXPECT_THAT(slurp(dir / "perf.csv"), HasSubstr("series,ratio,fraction"));
}

}  // namespace
