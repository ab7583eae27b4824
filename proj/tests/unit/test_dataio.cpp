#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "msel/dataio.hpp"
#include "msel/error.hpp"

using namespace msel;
using namespace msel::testing;

namespace {

const std::filesystem::path kData = MSEL_TEST_DATA_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t msg1_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_msg1(in, "g.msg1");
  } catch (const FormatError& e) {
    CHECK(e.file() == "g.msg1");
    return e.line();
  }
  FAIL("expected a format error");
  return 0;
}

RawDataset parse_ds(const std::string& content, const std::string& cites) {
  std::istringstream c(content), e(cites);
  return parse_content_cites(c, e);
}

}  // namespace

TEST_CASE("content and cites parsing") {
  RawDataset pair = load_content_cites(kData / "pair.content", kData / "pair.cites");
  CHECK(pair.nodes.size() == 2);
  CHECK(pair.cites.size() == 1);
  CHECK(pair.feature_count() == 2);
  CHECK(pair.nodes[1].label == "y");
  CHECK(dataset_stats(pair) == DatasetStats{2, 1, 2});

  RawDataset dangling = parse_ds("a 1 x\nb 0 y\n", "a b\nb zz\n");
  CHECK(dangling.cites.size() == 1);
  CHECK(dangling.dropped_cites == 1);

  CHECK_THROWS_AS(parse_ds("a 1 x\na 0 y\n", ""), FormatError);
  CHECK_THROWS_AS(parse_ds("a 1 x\nb 0 1 y\n", ""), FormatError);
  CHECK_THROWS_AS(parse_ds("a q x\n", ""), FormatError);
  CHECK_THROWS_AS(parse_ds("a x\n", ""), FormatError);
  CHECK_THROWS_AS(parse_ds("a 1 x\n", "a\n"), FormatError);
  try {
    parse_ds("a 1 x\nb 1 x\nb 0 y\n", "");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("content:3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_content_cites("/nonexistent.content", "/nonexistent.cites"), Error);
}

TEST_CASE("structural edges are symmetrized and self pairs dropped") {
  RawDataset ds = parse_ds("a 1 x\nb 1 x\nc 0 x\n", "a b\nb a\nc c\nb c\n");
  auto edges = structural_edges(ds);
  CHECK(edges == std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});
  SimGraph g = to_sim_graph(ds, BuildMode{});
  // b-c disagree fully on the single feature
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.labels().size() == 3);
}

TEST_CASE("toy dataset converts to the golden MSG1") {
  RawDataset ds = load_content_cites(kData / "toy.content", kData / "toy.cites");
  CHECK(ds.nodes.size() == 6);
  CHECK(ds.dropped_cites == 1);
  SimGraph g = to_sim_graph(ds, BuildMode{});
  std::ostringstream out;
  write_msg1(g, out);
  CHECK(out.str() == slurp(kData / "toy.msg1"));
  CHECK(dataset_stats(g, ds.feature_count()) == DatasetStats{6, 6, 4});

  // same files, same mapping
  SimGraph again = to_sim_graph(load_content_cites(kData / "toy.content", kData / "toy.cites"),
                                BuildMode{});
  CHECK(again == g);
}

TEST_CASE("MSG1 reading") {
  std::istringstream empty("MSG1\n0 0\n");
  CHECK(parse_msg1(empty).node_count() == 0);
  std::istringstream one("MSG1\n2 1\n0 1 1.000000\n");
  CHECK(parse_msg1(one).weight(0, 1) == 1.0);
  std::istringstream commented("# c\nMSG1\n# c\n3 1\n\n1 2 0.5\n");
  CHECK(parse_msg1(commented).edge_count() == 1);

  CHECK(msg1_error_line("MSG2\n0 0\n") == 1);
  CHECK(msg1_error_line("MSG1\n2 1\n0 1 0\n") == 3);
  CHECK(msg1_error_line("MSG1\n2 1\n0 1 1.5\n") == 3);
  CHECK(msg1_error_line("MSG1\n2 1\n1 0 0.5\n") == 3);
  CHECK(msg1_error_line("MSG1\n2 1\n0 2 0.5\n") == 3);
  CHECK(msg1_error_line("MSG1\n3 2\n0 1 0.5\n") == 3);
  CHECK(msg1_error_line("MSG1\n3 1\n0 1 0.5\n1 2 0.5\n") == 4);
  CHECK(msg1_error_line("MSG1\n3 2\n0 1 0.5\n0 1 0.4\n") == 4);
  CHECK(msg1_error_line("MSG1\nx\n") == 2);
  CHECK_THROWS_AS(read_msg1("/nonexistent/g.msg1"), Error);
}

TEST_CASE("format_weight round-trips with at least six significant digits") {
  CHECK(format_weight(1.0) == "1.00000");
  CHECK(format_weight(0.5) == "0.500000");
  CHECK(format_weight(0.1) == "0.100000");
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> w(1e-9, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = w(rng);
    CHECK(std::stod(format_weight(x)) == x);
  }
}

TEST_CASE("property: MSG1 write and read are inverse") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    SimGraph g = random_graph(1 + rng() % 30, 0.3, 1e-6, 1.0, rng);
    std::stringstream buf;
    write_msg1(g, buf);
    const std::string first = buf.str();
    SimGraph back = parse_msg1(buf);
    CHECK(back == g);
    std::ostringstream again;
    write_msg1(back, again);
    CHECK(again.str() == first);
  }
  const auto path = std::filesystem::temp_directory_path() / "msel_roundtrip.msg1";
  SimGraph g = two_clusters();
  write_msg1(g, path);
  CHECK(read_msg1(path) == g);
  std::filesystem::remove(path);
}

TEST_CASE("bridges files") {
  auto b = read_bridges(kData / "satellite.bridges");
  REQUIRE(b.size() == 3);
  CHECK(b[2] == WeightedEdge{2, 0, 0.8});
  std::istringstream bad("0 1\n");
  CHECK_THROWS_AS(parse_bridges(bad, "b"), FormatError);
  std::istringstream heavy("0 1 2.0\n");
  CHECK_THROWS_AS(parse_bridges(heavy, "b"), FormatError);
}
