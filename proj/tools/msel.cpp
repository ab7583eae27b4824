#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msel/bench.hpp"
#include "msel/dataio.hpp"
#include "msel/dcsel.hpp"
#include "msel/error.hpp"
#include "msel/oracle.hpp"
#include "msel/schedule.hpp"
#include "msel/similarity.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kRuntimeError = 3;

// Opens --out, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw msel::Error(msel::ErrorKind::Io, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw msel::Error(msel::ErrorKind::Io, "write failed");
  }

 private:
  std::ofstream file_;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string join_ids(const msel::NodeSet& ids) {
  std::string out;
  for (auto id : ids) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id);
  }
  return out;
}

void check_algorithm(const std::string& algo) {
  if (!msel::is_known_algorithm(algo)) {
    throw msel::Error(msel::ErrorKind::Parameter, "unknown algorithm '" + algo + "'");
  }
}

struct ConvertArgs {
  std::string content, cites, mode = "edges", out;
};

void cmd_convert(const ConvertArgs& a) {
  const auto mode = msel::BuildMode::parse(a.mode);
  msel::RawDataset ds = msel::load_content_cites(a.content, a.cites);
  msel::SimGraph g = msel::to_sim_graph(ds, mode);
  Output out(a.out);
  msel::write_msg1(g, out.stream());
  out.close();
  const auto stats = msel::dataset_stats(g, ds.feature_count());
  std::cerr << "nodes " << stats.nodes << " edges " << stats.edges << " features "
            << stats.features << " dropped_cites " << ds.dropped_cites << '\n';
}

struct RunArgs {
  std::string graph, schedule, algo = "dcsel", out;
  std::uint64_t seed = 0;
};

void cmd_run(const RunArgs& a) {
  check_algorithm(a.algo);
  msel::SimGraph g = msel::read_msg1(a.graph);
  msel::Schedule sched = msel::load_schedule(a.schedule);
  auto records = msel::run_algorithm(a.algo, g, sched, a.seed);
  Output out(a.out);
  msel::write_run_csv(out.stream(), records);
  out.close();
}

struct BenchArgs {
  std::string graph, schedule, out;
  std::vector<std::string> algos{"dcsel", "msgsel"};
  std::size_t repeat = 1;
  std::uint64_t seed = 0;
};

void cmd_bench(const BenchArgs& a) {
  msel::BenchConfig cfg{a.graph, a.schedule, a.algos, a.repeat, a.seed, a.out};
  cfg.validate();
  msel::SimGraph g = msel::read_msg1(cfg.graph);
  msel::Schedule sched = msel::load_schedule(cfg.schedule);
  auto rows = msel::run_bench(g, sched, cfg.algorithms, cfg.repeat, cfg.seed);
  Output out(a.out);
  msel::write_bench_csv(out.stream(), rows);
  out.close();
}

struct OracleArgs {
  std::string graph, algo = "dcsel";
  long long p = 0;
  double s = 0.5;
  std::uint64_t seed = 0;
};

void cmd_oracle(const OracleArgs& a) {
  check_algorithm(a.algo);
  const auto c = msel::ConstraintPair::checked(a.s, a.p);
  msel::SimGraph g = msel::read_msg1(a.graph);
  msel::OracleResult opt = msel::exact_msp(g, c);
  if (!opt.feasible) {
    std::cout << "INFEASIBLE\n";
    return;
  }
  msel::Solution sol;
  if (a.algo == "dcsel") {
    sol = msel::Session(g, c).current();
  } else {
    sol = msel::solve_once(a.algo, g, c, a.seed);
  }
  std::cout << "opt_set " << join_ids(opt.opt_set) << '\n'
            << "opt_alpha " << fixed6(opt.opt_alpha) << '\n'
            << "algo " << a.algo << '\n'
            << "algo_set " << join_ids(sol.members) << '\n'
            << "algo_alpha " << fixed6(sol.alpha) << '\n'
            << "ratio " << fixed6(msel::ratio_check(opt, sol)) << '\n';
}

struct PlotArgs {
  std::string in, out;
};

void cmd_plot(const PlotArgs& a) {
  std::ifstream in(a.in, std::ios::binary);
  if (!in) throw msel::Error(msel::ErrorKind::Io, "cannot open " + a.in);
  auto points = msel::read_plot_csv(in, a.in);
  const std::string svg = msel::render_svg(points);
  Output out(a.out);
  out.stream() << svg;
  out.close();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"member selection under dynamic constraints"};
  app.require_subcommand(1);

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "content/cites dataset to MSG1");
  convert->add_option("--content", conv.content, "content file")->required();
  convert->add_option("--cites", conv.cites, "cites file")->required();
  convert->add_option("--mode", conv.mode, "edges | knn:K | full")->capture_default_str();
  convert->add_option("--out", conv.out, "output MSG1 path (default stdout)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "replay a schedule, one CSV row per step");
  run_cmd->add_option("--graph", run.graph, "MSG1 graph")->required();
  run_cmd->add_option("--schedule", run.schedule, "schedule file")->required();
  run_cmd->add_option("--algo", run.algo, "algorithm")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "output CSV path (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "time algorithms over a schedule");
  bench_cmd->add_option("--graph", bench.graph, "MSG1 graph")->required();
  bench_cmd->add_option("--schedule", bench.schedule, "schedule file")->required();
  bench_cmd->add_option("--algos", bench.algos, "comma separated algorithms")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--repeat", bench.repeat, "repeats per algorithm")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "seed")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "output CSV path (default stdout)");

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "exact optimum and ratio on a small graph");
  oracle->add_option("--graph", orc.graph, "MSG1 graph")->required();
  oracle->add_option("--p", orc.p, "size threshold")->required();
  oracle->add_option("--s", orc.s, "similarity threshold")->required();
  oracle->add_option("--algo", orc.algo, "algorithm to compare")->capture_default_str();
  oracle->add_option("--seed", orc.seed, "seed for the random baseline");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG of alpha per step");
  plot_cmd->add_option("--in", plot.in, "CSV from run or bench")->required();
  plot_cmd->add_option("--out", plot.out, "output SVG path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*convert) cmd_convert(conv);
    if (*run_cmd) cmd_run(run);
    if (*bench_cmd) cmd_bench(bench);
    if (*oracle) cmd_oracle(orc);
    if (*plot_cmd) cmd_plot(plot);
  } catch (const msel::ScheduleError& e) {
    std::cerr << "msel: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const msel::Error& e) {
    std::cerr << "msel: " << msel::to_string(e.kind()) << " error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "msel: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
