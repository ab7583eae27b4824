#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "msel/graph.hpp"
#include "msel/schedule.hpp"

namespace msel {

/// Algorithm names accepted by run/bench/oracle.
const std::vector<std::string>& known_algorithms();
bool is_known_algorithm(const std::string& name);

/// One from-scratch solve. "dcsel" and "msgsel" both mean a fresh modified
/// SGSEL peel here.
Solution solve_once(const std::string& algo, const SimGraph& g, const ConstraintPair& c,
                    std::uint64_t seed);

/// Replays a schedule. dcsel keeps one session; every other algorithm
/// re-solves from scratch under the cumulative constraints of each step.
/// Record 0 is the init step.
std::vector<StepRecord> run_algorithm(const std::string& algo, const SimGraph& g,
                                      const Schedule& schedule, std::uint64_t seed);

struct BenchConfig {
  std::filesystem::path graph;
  std::filesystem::path schedule;
  std::vector<std::string> algorithms;
  std::size_t repeat = 1;
  std::uint64_t seed = 0;
  std::filesystem::path output;

  /// Throws Error(Parameter) on repeat < 1 or an unknown algorithm.
  void validate() const;
};

struct BenchRow {
  StepRecord record;  // alpha/size/feasible from the first repeat; wall_ns = min
  std::int64_t mean_ns = 0;
  std::int64_t min_ns = 0;
};

/// Every algorithm x repeat; rows sorted by (algo, step).
std::vector<BenchRow> run_bench(const SimGraph& g, const Schedule& schedule,
                                std::span<const std::string> algorithms,
                                std::size_t repeat, std::uint64_t seed);

inline constexpr const char* kRunCsvHeader = "step,event,algo,alpha,size,feasible,wall_ns";
inline constexpr const char* kBenchCsvHeader =
    "step,event,algo,alpha,size,feasible,wall_ns,mean_ns,min_ns";

void write_run_csv(std::ostream& out, std::span<const StepRecord> records);
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

struct PlotPoint {
  std::string algo;
  std::size_t step = 0;
  double alpha = 0.0;
};

/// Reads step/algo/alpha columns from a run or bench CSV.
std::vector<PlotPoint> read_plot_csv(std::istream& in, const std::string& name = "<csv>");

/// Static SVG: x = step, y = alpha, one polyline per algorithm (a single
/// point marker when the algorithm has one row), legend and numeric ticks.
std::string render_svg(std::span<const PlotPoint> points);

}  // namespace msel
