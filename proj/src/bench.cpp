#include "msel/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "msel/baselines.hpp"
#include "msel/dataio.hpp"
#include "msel/dcsel.hpp"
#include "msel/error.hpp"
#include "msel/peel.hpp"

namespace msel {

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"dcsel",  "sgsel",  "msgsel",
                                              "random", "degree", "average"};
  return names;
}

bool is_known_algorithm(const std::string& name) {
  const auto& names = known_algorithms();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Solution solve_once(const std::string& algo, const SimGraph& g, const ConstraintPair& c,
                    std::uint64_t seed) {
  if (algo == "dcsel" || algo == "msgsel") return modified_sgsel(g, c).best;
  if (algo == "sgsel") return sgsel(g, c);
  if (algo == "random") return random_peel(g, c, seed);
  if (algo == "degree") return degree_peel(g, c);
  if (algo == "average") return average_peel(g, c);
  throw Error(ErrorKind::Parameter, "unknown algorithm '" + algo + "'");
}

namespace {

// splitmix64 finalizer; gives each step its own stream from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t step) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (step + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<StepRecord> run_rerun(const std::string& algo, const SimGraph& g,
                                  const Schedule& schedule, std::uint64_t seed) {
  std::vector<StepRecord> records;
  auto graph = std::make_shared<const SimGraph>(g);
  ConstraintPair c = schedule.initial;
  auto solve = [&](std::size_t step, std::string text) {
    const auto start = monotonic_ns();
    Solution sol = solve_once(algo, *graph, c, mix_seed(seed, step));
    const auto wall = std::max<std::int64_t>(1, monotonic_ns() - start);
    records.push_back({step, std::move(text), algo, sol.alpha, sol.size(), !sol.empty(), wall});
  };
  solve(0, schedule.init_text());
  for (std::size_t i = 0; i < schedule.events.size(); ++i) {
    const ScheduleEvent& ev = schedule.events[i];
    try {
      apply_to_constraints(c, ev);
      if (ev.kind == ScheduleEvent::Kind::Augment) {
        SimGraph extra = read_msg1(ev.graph_path);
        std::vector<WeightedEdge> bridges;
        if (!ev.bridges_path.empty()) bridges = read_bridges(ev.bridges_path);
        graph = std::make_shared<const SimGraph>(merge_graphs(*graph, extra, bridges));
      }
    } catch (const Error& e) {
      throw ScheduleError(i + 1, e.what());
    }
    solve(i + 1, ev.text());
  }
  return records;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

void write_common(std::ostream& out, const StepRecord& r) {
  char alpha[64];
  std::snprintf(alpha, sizeof alpha, "%.6f", r.alpha);
  out << r.step << ',' << csv_field(r.event) << ',' << csv_field(r.algo) << ',' << alpha
      << ',' << r.size << ',' << (r.feasible ? 1 : 0) << ',' << r.wall_ns;
}

}  // namespace

std::vector<StepRecord> run_algorithm(const std::string& algo, const SimGraph& g,
                                      const Schedule& schedule, std::uint64_t seed) {
  if (!is_known_algorithm(algo)) {
    throw Error(ErrorKind::Parameter, "unknown algorithm '" + algo + "'");
  }
  if (algo != "dcsel") return run_rerun(algo, g, schedule, seed);
  Session session(g, schedule.initial);
  const HistoryRecord& h = session.history().front();
  std::vector<StepRecord> records{
      {0, schedule.init_text(), "dcsel", h.alpha, h.size, h.feasible, h.wall_ns}};
  auto steps = run_schedule(session, schedule.events, 1);
  records.insert(records.end(), steps.begin(), steps.end());
  return records;
}

void BenchConfig::validate() const {
  if (repeat < 1) throw Error(ErrorKind::Parameter, "repeat must be >= 1");
  if (algorithms.empty()) throw Error(ErrorKind::Parameter, "no algorithms selected");
  for (const auto& a : algorithms) {
    if (!is_known_algorithm(a)) throw Error(ErrorKind::Parameter, "unknown algorithm '" + a + "'");
  }
}

std::vector<BenchRow> run_bench(const SimGraph& g, const Schedule& schedule,
                                std::span<const std::string> algorithms,
                                std::size_t repeat, std::uint64_t seed) {
  BenchConfig cfg;
  cfg.algorithms.assign(algorithms.begin(), algorithms.end());
  cfg.repeat = repeat;
  cfg.validate();

  std::vector<BenchRow> rows;
  for (const auto& algo : cfg.algorithms) {
    std::vector<BenchRow> mine;
    std::vector<std::int64_t> total;
    for (std::size_t r = 0; r < repeat; ++r) {
      auto records = run_algorithm(algo, g, schedule, seed);
      if (r == 0) {
        for (auto& rec : records) mine.push_back({rec, 0, rec.wall_ns});
        total.assign(records.size(), 0);
      }
      for (std::size_t i = 0; i < records.size() && i < mine.size(); ++i) {
        total[i] += records[i].wall_ns;
        mine[i].min_ns = std::min(mine[i].min_ns, records[i].wall_ns);
      }
    }
    for (std::size_t i = 0; i < mine.size(); ++i) {
      mine[i].mean_ns = total[i] / static_cast<std::int64_t>(repeat);
      mine[i].record.wall_ns = mine[i].min_ns;
    }
    rows.insert(rows.end(), mine.begin(), mine.end());
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    if (a.record.algo != b.record.algo) return a.record.algo < b.record.algo;
    return a.record.step < b.record.step;
  });
  return rows;
}

void write_run_csv(std::ostream& out, std::span<const StepRecord> records) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : records) {
    write_common(out, r);
    out << '\n';
  }
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << kBenchCsvHeader << '\n';
  for (const auto& row : rows) {
    write_common(out, row.record);
    out << ',' << row.mean_ns << ',' << row.min_ns << '\n';
  }
}

std::vector<PlotPoint> read_plot_csv(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw FormatError(name, 1, "empty CSV");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv(line);
  auto column = [&](const std::string& col) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), col);
    if (it == header.end()) throw FormatError(name, 1, "missing column '" + col + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t step_col = column("step"), algo_col = column("algo"),
                    alpha_col = column("alpha");
  std::vector<PlotPoint> points;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != header.size()) throw FormatError(name, lineno, "wrong field count");
    PlotPoint p;
    p.algo = f[algo_col];
    char* end = nullptr;
    p.step = std::strtoull(f[step_col].c_str(), &end, 10);
    if (f[step_col].empty() || *end != '\0') throw FormatError(name, lineno, "bad step");
    p.alpha = std::strtod(f[alpha_col].c_str(), &end);
    if (f[alpha_col].empty() || *end != '\0') throw FormatError(name, lineno, "bad alpha");
    points.push_back(std::move(p));
  }
  if (points.empty()) throw FormatError(name, lineno, "CSV has no data rows");
  return points;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// 1-2-5 tick spacing covering [lo, hi] with about `target` intervals.
double nice_step(double span, int target) {
  if (span <= 0.0) return 1.0;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double nice = norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0;
  return nice * mag;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(std::span<const PlotPoint> points) {
  if (points.empty()) throw Error(ErrorKind::Data, "nothing to plot");
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  constexpr double width = 720, height = 440;
  constexpr double left = 70, right = 160, top = 30, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  std::map<std::string, std::vector<std::pair<std::size_t, double>>> series;
  std::size_t max_step = 0;
  double lo = points.front().alpha, hi = points.front().alpha;
  for (const auto& p : points) {
    series[p.algo].emplace_back(p.step, p.alpha);
    max_step = std::max(max_step, p.step);
    lo = std::min(lo, p.alpha);
    hi = std::max(hi, p.alpha);
  }
  lo = std::min(lo, 0.0);
  const double ystep = nice_step(hi - lo, 5);
  double ymax = std::ceil(hi / ystep) * ystep;
  if (ymax <= lo) ymax = lo + ystep;
  const double ymin = std::floor(lo / ystep) * ystep;
  const double xmax = std::max<double>(1.0, static_cast<double>(max_step));
  const double xstep = std::max(1.0, nice_step(xmax, 10));

  auto px = [&](double step) { return left + plot_w * step / xmax; };
  auto py = [&](double a) { return top + plot_h * (1.0 - (a - ymin) / (ymax - ymin)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double x = 0.0; x <= xmax + 1e-9; x += xstep) {
    const std::string xs = fmt("%.2f", px(x));
    svg << "<line x1=\"" << xs << "\" y1=\"" << top + plot_h << "\" x2=\"" << xs
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << xs << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt("%.0f", x) << "</text>\n";
  }
  const int ticks = static_cast<int>(std::round((ymax - ymin) / ystep));
  for (int i = 0; i <= ticks; ++i) {
    const double y = ymin + i * ystep;
    const std::string ys = fmt("%.2f", py(y));
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << ys << "\" x2=\"" << left
        << "\" y2=\"" << ys << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << ys
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << fmt("%.3g", y)
        << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">step</text>\n";
  svg << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\">alpha</text>\n";
  svg << "</g>\n";

  std::size_t index = 0;
  for (auto& [algo, pts] : series) {
    std::sort(pts.begin(), pts.end());
    const char* color = palette[index % std::size(palette)];
    if (pts.size() == 1) {
      svg << "<circle cx=\"" << fmt("%.2f", px(static_cast<double>(pts[0].first)))
          << "\" cy=\"" << fmt("%.2f", py(pts[0].second)) << "\" r=\"4\" fill=\"" << color
          << "\"/>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt("%.2f", px(static_cast<double>(pts[i].first))) << ','
            << fmt("%.2f", py(pts[i].second));
      }
      svg << "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(index);
    const double lx = left + plot_w + 15;
    svg << "<rect x=\"" << lx << "\" y=\"" << ly - 5 << "\" width=\"14\" height=\"4\" fill=\""
        << color << "\"/>\n";
    svg << "<text x=\"" << lx + 20 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\" dominant-baseline=\"middle\">"
        << xml_escape(algo) << "</text>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace msel
