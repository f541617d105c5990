#include <filesystem>
#include <random>
#include <sstream>

#include "gmock/gmock.h"
#include "hgraph/hmetis_io.h"
#include "hgraph/hypergraph.h"
#include "support/oracles.h"

using ::testing::ElementsAre;
using ::testing::Eq;
using ::testing::UnorderedElementsAre;

namespace mmhp {
namespace {

const std::filesystem::path kFixtures = MMHP_FIXTURE_DIR;

std::vector<NodeID> pins_of(const Hypergraph& h, EdgeID e) { return {h.pins(e).begin(), h.pins(e).end()}; }

TEST(AnHmetisParser, ReadsMinimalInstance) {
  const Hypergraph h = read_hmetis_file(kFixtures / "minimal.hgr");
  EXPECT_THAT(h.initial_num_nodes(), Eq(2u));
  EXPECT_THAT(h.num_edges(), Eq(1u));
  EXPECT_THAT(pins_of(h, 0), ElementsAre(0u, 1u));
  EXPECT_THAT(h.node_weight(0), Eq(1));
  EXPECT_THAT(h.node_weight(1), Eq(1));
  EXPECT_THAT(h.edge_cost(0), Eq(1));
}

TEST(AnHmetisParser, ReadsCostsAndWeights) {
  const Hypergraph h = read_hmetis_file(kFixtures / "weighted.hgr");
  EXPECT_THAT(h.initial_num_nodes(), Eq(4u));
  EXPECT_THAT(h.edge_cost(0), Eq(5));
  EXPECT_THAT(h.edge_cost(1), Eq(2));
  EXPECT_THAT(h.edge_cost(2), Eq(7));
  EXPECT_THAT((std::vector<Weight>{h.node_weight(0), h.node_weight(1), h.node_weight(2), h.node_weight(3)}),
              ElementsAre(1, 1, 2, 3));
  EXPECT_THAT(pins_of(h, 2), ElementsAre(0u, 2u, 3u));
}

TEST(AnHmetisParser, SkipsCommentsAndToleratesCarriageReturns) {
  const Hypergraph h = parse_hmetis_string("% comment\r\n2 3\r\n1 2 \r\n% between\n2 3\n");
  EXPECT_THAT(h.num_edges(), Eq(2u));
  EXPECT_THAT(pins_of(h, 1), ElementsAre(1u, 2u));
}

TEST(AnHmetisParser, ReadsShippedInstances) {
  const Hypergraph h = read_hmetis_file(kFixtures / "h0.hgr");
  EXPECT_THAT(h.initial_num_pins(), Eq(8u));
  const auto data = std::filesystem::path(MMHP_DATA_DIR) / "instances";
  for (const char* name : {"ibm01.hgr", "powersim.hgr", "delaunay_n15.hgr", "ibm01.dual.hgr", "powersim.dual.hgr"}) {
    const Hypergraph g = read_hmetis_file(data / name);
    EXPECT_GE(g.initial_num_nodes(), 10000u) << name;
    EXPECT_THAT(g.audit(), Eq("")) << name;
  }
}

class ACorruptFixture : public ::testing::TestWithParam<const char*> {};

TEST_P(ACorruptFixture, IsRejected) {
  EXPECT_THROW(read_hmetis_file(kFixtures / "corrupt" / GetParam()), ParseError);
}

INSTANTIATE_TEST_SUITE_P(AllCorruptFiles, ACorruptFixture,
                         ::testing::Values("bad_header.hgr", "pin_out_of_range.hgr", "duplicate_pin.hgr",
                                           "empty_edge.hgr", "truncated.hgr", "bad_format.hgr",
                                           "missing_weights.hgr", "negative_cost.hgr", "zero_pin.hgr",
                                           "garbage_pin.hgr", "empty.hgr"));

TEST(AnHmetisParser, ReportsMissingFileAsIoError) {
  EXPECT_THROW(read_hmetis_file(kFixtures / "does_not_exist.hgr"), IoError);
}

TEST(AnHmetisWriter, RoundTripsWeightedInstances) {
  const Hypergraph h = read_hmetis_file(kFixtures / "weighted.hgr");
  std::ostringstream out;
  write_hmetis(h, out);
  EXPECT_TRUE(parse_hmetis_string(out.str()) == h);
}

class AHypergraph : public ::testing::Test {
 protected:
  Hypergraph h = oracle::h0();
};

TEST_F(AHypergraph, RejectsInvalidInput) {
  EXPECT_THROW(Hypergraph(2, {{}}), HypergraphError);
  EXPECT_THROW(Hypergraph(2, {{0, 0}}), HypergraphError);
  EXPECT_THROW(Hypergraph(2, {{0, 2}}), HypergraphError);
  EXPECT_THROW(Hypergraph(2, {{0, 1}}, {1, -1}), HypergraphError);
  EXPECT_THROW(Hypergraph(2, {{0, 1}}, {1}), HypergraphError);
}

TEST_F(AHypergraph, ContractsNodesSharingEdges) {
  // contract(3, 4) in 1-indexed terms.
  const ContractionMemento m = h.contract(2, 3);
  EXPECT_THAT(pins_of(h, 1), UnorderedElementsAre(1u, 2u));
  EXPECT_THAT(pins_of(h, 2), UnorderedElementsAre(0u, 2u));
  EXPECT_THAT(h.node_weight(2), Eq(2));
  EXPECT_FALSE(h.is_active(3));
  EXPECT_THAT(h.current_num_nodes(), Eq(3u));
  EXPECT_THAT(h.total_weight(), Eq(4));
  EXPECT_THAT(m.shrunk_edges.size(), Eq(2u));
  EXPECT_TRUE(m.moved_edges.empty());
  EXPECT_THAT(h.audit(), Eq(""));
}

TEST_F(AHypergraph, MovesEdgesNotSharedWithKeptNode) {
  const ContractionMemento m = h.contract(0, 1);
  EXPECT_THAT(pins_of(h, 0), ElementsAre(0u));
  EXPECT_THAT(pins_of(h, 1), UnorderedElementsAre(0u, 2u, 3u));
  EXPECT_THAT(m.moved_edges.size(), Eq(1u));
  EXPECT_THAT(m.shrunk_edges.size(), Eq(1u));
  EXPECT_THAT(h.audit(), Eq(""));
}

TEST_F(AHypergraph, DeletesNodeWhoseEdgesAreSubsetOfKeptNodes) {
  Hypergraph g(3, {{0, 1}, {0, 1, 2}});
  const std::size_t pins_before = g.current_num_pins();
  const ContractionMemento m = g.contract(0, 1);
  EXPECT_TRUE(m.moved_edges.empty());
  EXPECT_THAT(g.current_num_pins(), Eq(pins_before - 2));
  EXPECT_THAT(pins_of(g, 1), UnorderedElementsAre(0u, 2u));
}

TEST_F(AHypergraph, RestoresExactlyOnUncontract) {
  const Hypergraph original = h;
  const ContractionMemento m = h.contract(2, 3);
  h.uncontract(m);
  EXPECT_TRUE(h == original);
}

TEST_F(AHypergraph, EnforcesStackDisciplineOnUncontract) {
  const Hypergraph original = h;
  const ContractionMemento first = h.contract(0, 1);
  const ContractionMemento second = h.contract(0, 2);
  EXPECT_THROW(h.uncontract(first), HypergraphError);
  h.uncontract(second);
  h.uncontract(first);
  EXPECT_TRUE(h == original);
}

TEST_F(AHypergraph, RejectsInvalidContractions) {
  EXPECT_THROW(h.contract(1, 1), HypergraphError);
  h.contract(0, 1);
  EXPECT_THROW(h.contract(0, 1), HypergraphError);
  EXPECT_THROW(h.contract(1, 2), HypergraphError);
}

TEST(ARandomHypergraph, RoundTripsThousandSingleContractions) {
  std::mt19937_64 gen(7);
  const Hypergraph original =
      oracle::random_hypergraph(gen, {.min_nodes = 30, .max_nodes = 30, .min_edges = 40, .max_edges = 40,
                                      .max_edge_size = 6, .weighted = true});
  Hypergraph h = original;
  std::uniform_int_distribution<NodeID> node(0, 29);
  for (int i = 0; i < 1000; ++i) {
    const NodeID u = node(gen);
    NodeID v = node(gen);
    while (v == u) v = node(gen);
    const ContractionMemento m = h.contract(u, v);
    ASSERT_THAT(h.audit(), Eq(""));
    h.uncontract(m);
    ASSERT_TRUE(h == original) << "pair " << u << ", " << v;
  }
}

TEST(ARandomHypergraph, RoundTripsDepthFiftyContractionChains) {
  std::mt19937_64 gen(11);
  for (int instance = 0; instance < 100; ++instance) {
    const Hypergraph original =
        oracle::random_hypergraph(gen, {.min_nodes = 51, .max_nodes = 80, .min_edges = 20, .max_edges = 120,
                                        .max_edge_size = 8, .weighted = instance % 2 == 1});
    Hypergraph h = original;
    std::vector<ContractionMemento> stack;
    for (int depth = 0; depth < 50; ++depth) {
      std::vector<NodeID> active = h.active_nodes();
      std::shuffle(active.begin(), active.end(), gen);
      stack.push_back(h.contract(active[0], active[1]));
      ASSERT_THAT(h.total_weight(), Eq(original.total_weight()));
    }
    ASSERT_THAT(h.audit(), Eq(""));
    while (!stack.empty()) {
      h.uncontract(stack.back());
      stack.pop_back();
    }
    ASSERT_TRUE(h == original) << "instance " << instance;
  }
}

TEST(APartitionFile, WritesOneBlockPerLine) {
  std::ostringstream out;
  write_partition({0, 0, 1, 1}, out);
  EXPECT_THAT(out.str(), Eq("0\n0\n1\n1\n"));
}

TEST(APartitionFile, RoundTripsLargeBlockIds) {
  std::vector<BlockID> blocks;
  for (BlockID b = 0; b < 128; ++b) blocks.push_back(b);
  std::ostringstream out;
  write_partition(blocks, out);
  EXPECT_NE(out.str().find("\n127\n"), std::string::npos);
  std::istringstream in(out.str());
  EXPECT_THAT(read_partition(in), Eq(blocks));
}

TEST(APartitionFile, ReportsUnwritableSink) {
  EXPECT_THROW(write_partition_file({0, 1}, "/nonexistent-dir/part.txt"), IoError);
}

}  // namespace
}  // namespace mmhp
