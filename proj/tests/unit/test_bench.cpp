#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "msel/bench.hpp"
#include "msel/dataio.hpp"
#include "msel/error.hpp"
#include "msel/peel.hpp"

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

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

std::string strip_timing(const std::string& csv) {
  // drop the last column of every line
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("algorithm names") {
  CHECK(known_algorithms().size() == 6);
  for (const char* name : {"dcsel", "sgsel", "msgsel", "random", "degree", "average"}) {
    CHECK(is_known_algorithm(name));
  }
  CHECK_FALSE(is_known_algorithm("greedy"));
  CHECK_THROWS_AS(solve_once("greedy", two_clusters(), {0.1, 2}, 0), Error);
  BenchConfig cfg;
  cfg.algorithms = {"dcsel"};
  cfg.repeat = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.repeat = 1;
  CHECK_NOTHROW(cfg.validate());
  cfg.algorithms = {"dcsel", "nope"};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("run_algorithm records the init step") {
  Schedule sched = load_schedule(kData / "empty.sched");
  auto recs = run_algorithm("dcsel", two_clusters(), sched, 0);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].step == 0);
  CHECK(recs[0].event == "init p=1 s=0.5");
  CHECK(recs[0].wall_ns > 0);
}

TEST_CASE("dcsel tracks the rerun baseline on an increasing schedule") {
  SimGraph g = two_clusters();
  Schedule sched = load_schedule(kData / "increase.sched");
  auto dc = run_algorithm("dcsel", g, sched, 0);
  auto rerun = run_algorithm("msgsel", g, sched, 0);
  REQUIRE(dc.size() == 4);
  REQUIRE(rerun.size() == 4);
  for (std::size_t i = 0; i < dc.size(); ++i) {
    CHECK(dc[i].event == rerun[i].event);
    CHECK(rerun[i].algo == "msgsel");
    if (rerun[i].feasible) CHECK(dc[i].alpha >= 0.95 * rerun[i].alpha);
  }
}

TEST_CASE("rerun algorithms follow augment events") {
  SimGraph g = read_msg1(kData / "two_clusters.msg1");
  Schedule sched = load_schedule(kData / "mixed.sched");
  for (const auto& algo : known_algorithms()) {
    auto recs = run_algorithm(algo, g, sched, 9);
    CHECK(recs.size() == sched.events.size() + 1);
    for (const auto& r : recs) CHECK(r.alpha >= 0.0);
  }
}

TEST_CASE("CSV output is deterministic and schema-stable") {
  SimGraph g = two_clusters();
  Schedule sched = load_schedule(kData / "increase.sched");
  std::ostringstream a, b;
  write_run_csv(a, run_algorithm("random", g, sched, 42));
  write_run_csv(b, run_algorithm("random", g, sched, 42));
  CHECK(strip_timing(a.str()) == strip_timing(b.str()));
  CHECK(a.str().rfind(std::string(kRunCsvHeader) + "\n", 0) == 0);
  CHECK(a.str().find("\n0,init p=2 s=0.1,random,") != std::string::npos);

  std::vector<StepRecord> quoted{{1, "augment a,b.msg1", "dcsel", 0.5, 2, true, 10}};
  std::ostringstream q;
  write_run_csv(q, quoted);
  CHECK(q.str().find("1,\"augment a,b.msg1\",dcsel,0.500000,2,1,10") != std::string::npos);
}

TEST_CASE("bench with one repeat matches run") {
  SimGraph g = two_clusters();
  Schedule sched = load_schedule(kData / "increase.sched");
  std::vector<std::string> algos{"msgsel", "dcsel"};
  auto rows = run_bench(g, sched, algos, 1, 0);
  REQUIRE(rows.size() == 8);
  CHECK(rows.front().record.algo == "dcsel");
  auto dc = run_algorithm("dcsel", g, sched, 0);
  for (std::size_t i = 0; i < dc.size(); ++i) {
    CHECK(rows[i].record.step == dc[i].step);
    CHECK(rows[i].record.alpha == dc[i].alpha);
    CHECK(rows[i].record.size == dc[i].size);
    CHECK(rows[i].mean_ns == rows[i].min_ns);
  }
  std::ostringstream out;
  write_bench_csv(out, rows);
  CHECK(out.str().rfind(std::string(kBenchCsvHeader) + "\n", 0) == 0);
  CHECK(count(out.str(), "\n") == 9);
  CHECK_THROWS_AS(run_bench(g, sched, algos, 0, 0), Error);
}

TEST_CASE("plot CSV parsing") {
  std::istringstream csv(slurp(kData / "plot.csv"));
  auto pts = read_plot_csv(csv);
  REQUIRE(pts.size() == 6);
  CHECK(pts[4].algo == "msgsel");
  CHECK(pts[4].step == 1);
  CHECK(pts[4].alpha == 0.7375);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_plot_csv(empty), FormatError);
  std::istringstream header_only(std::string(kRunCsvHeader) + "\n");
  CHECK_THROWS_AS(read_plot_csv(header_only), Error);
  std::istringstream no_alpha("step,algo\n1,x\n");
  CHECK_THROWS_AS(read_plot_csv(no_alpha), FormatError);
}

TEST_CASE("SVG rendering") {
  std::istringstream csv(slurp(kData / "plot.csv"));
  auto pts = read_plot_csv(csv);
  const std::string svg = render_svg(pts);
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "<circle") == 0);
  CHECK(svg == slurp(kData / "plot.svg"));

  std::vector<PlotPoint> single{{"dcsel", 0, 0.4}};
  const std::string dot = render_svg(single);
  CHECK(count(dot, "<polyline") == 0);
  CHECK(count(dot, "<circle") == 1);
  CHECK_THROWS_AS(render_svg({}), Error);
}
