#include "msel/schedule.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>

#include "msel/dataio.hpp"

namespace msel {

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

bool parse_int(const std::string& text, long long& out) {
  char* end = nullptr;
  out = std::strtoll(text.c_str(), &end, 10);
  return !text.empty() && *end == '\0';
}

bool parse_real(const std::string& text, double& out) {
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return !text.empty() && *end == '\0';
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ScheduleEvent ScheduleEvent::size_set(long long p) {
  ScheduleEvent e;
  e.kind = Kind::SizeSet;
  e.size = p;
  return e;
}

ScheduleEvent ScheduleEvent::size_delta(long long dp) {
  ScheduleEvent e;
  e.kind = Kind::SizeDelta;
  e.size = dp;
  return e;
}

ScheduleEvent ScheduleEvent::similarity_set(double s) {
  ScheduleEvent e;
  e.kind = Kind::SimilaritySet;
  e.similarity = s;
  return e;
}

ScheduleEvent ScheduleEvent::similarity_delta(double ds) {
  ScheduleEvent e;
  e.kind = Kind::SimilarityDelta;
  e.similarity = ds;
  return e;
}

ScheduleEvent ScheduleEvent::augment(std::filesystem::path graph,
                                     std::filesystem::path bridges) {
  ScheduleEvent e;
  e.kind = Kind::Augment;
  e.graph_path = std::move(graph);
  e.bridges_path = std::move(bridges);
  return e;
}

std::string ScheduleEvent::text() const {
  if (!source.empty()) return source;
  switch (kind) {
    case Kind::SizeSet: return "p = " + std::to_string(size);
    case Kind::SizeDelta:
      return size < 0 ? "p -= " + std::to_string(-size) : "p += " + std::to_string(size);
    case Kind::SimilaritySet: return "s = " + format_real(similarity);
    case Kind::SimilarityDelta:
      return similarity < 0 ? "s -= " + format_real(-similarity)
                            : "s += " + format_real(similarity);
    case Kind::Augment: {
      std::string t = "augment " + graph_path.string();
      if (!bridges_path.empty()) t += " bridges " + bridges_path.string();
      return t;
    }
  }
  return {};
}

std::string Schedule::init_text() const {
  return "init p=" + std::to_string(initial.p) + " s=" + format_real(initial.s);
}

Schedule parse_schedule(std::istream& in, const std::string& name,
                        const std::filesystem::path& base_dir) {
  static const std::regex init_re(R"(^init\s+p\s*=\s*(\S+)\s+s\s*=\s*(\S+)$)");
  static const std::regex delta_re(R"(^([ps])\s*(\+=|-=|=)\s*(\S+)$)");
  static const std::regex augment_re(R"(^augment\s+(\S+)(?:\s+bridges\s+(\S+))?$)");

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  Schedule schedule;
  bool have_init = false;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::smatch m;
    if (!have_init) {
      long long p = 0;
      double s = 0.0;
      if (!std::regex_match(line, m, init_re)) {
        throw FormatError(name, lineno, "first event must be `init p=<int> s=<real>`");
      }
      if (!parse_int(m[1], p) || !parse_real(m[2], s)) {
        throw FormatError(name, lineno, "bad init values");
      }
      try {
        schedule.initial = ConstraintPair::checked(s, p);
      } catch (const Error& e) {
        throw FormatError(name, lineno, e.what());
      }
      have_init = true;
      continue;
    }
    ScheduleEvent ev;
    if (std::regex_match(line, m, delta_re)) {
      const std::string op = m[2];
      if (m[1] == "p") {
        long long v = 0;
        if (!parse_int(m[3], v) || v < 0) {
          throw FormatError(name, lineno, "expected a nonnegative integer");
        }
        ev = op == "=" ? ScheduleEvent::size_set(v)
                       : ScheduleEvent::size_delta(op == "+=" ? v : -v);
      } else {
        double v = 0.0;
        if (!parse_real(m[3], v) || v < 0.0) {
          throw FormatError(name, lineno, "expected a nonnegative real");
        }
        ev = op == "=" ? ScheduleEvent::similarity_set(v)
                       : ScheduleEvent::similarity_delta(op == "+=" ? v : -v);
      }
    } else if (std::regex_match(line, m, augment_re)) {
      ev = ScheduleEvent::augment(resolve(m[1]),
                                  m[2].matched ? resolve(m[2]) : std::filesystem::path{});
    } else if (line.rfind("init", 0) == 0) {
      throw FormatError(name, lineno, "init may only appear once, on the first line");
    } else {
      throw FormatError(name, lineno, "unrecognized event `" + line + "`");
    }
    ev.source = line;
    schedule.events.push_back(std::move(ev));
  }
  if (!have_init) throw FormatError(name, lineno, "schedule has no init line");
  return schedule;
}

Schedule load_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_schedule(in, path.string(), path.parent_path());
}

void apply_to_constraints(ConstraintPair& c, const ScheduleEvent& event) {
  switch (event.kind) {
    case ScheduleEvent::Kind::SizeSet:
      c = ConstraintPair::checked(c.s, event.size);
      break;
    case ScheduleEvent::Kind::SizeDelta:
      c = ConstraintPair::checked(c.s, static_cast<long long>(c.p) + event.size);
      break;
    case ScheduleEvent::Kind::SimilaritySet:
      c = ConstraintPair::checked(event.similarity, static_cast<long long>(c.p));
      break;
    case ScheduleEvent::Kind::SimilarityDelta:
      c = ConstraintPair::checked(c.s + event.similarity, static_cast<long long>(c.p));
      break;
    case ScheduleEvent::Kind::Augment:
      break;
  }
}

std::vector<StepRecord> run_schedule(Session& session, std::span<const ScheduleEvent> events,
                                     std::size_t first_step) {
  std::vector<StepRecord> records;
  records.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    const ScheduleEvent& ev = events[i];
    const std::size_t step = first_step + i;
    try {
      switch (ev.kind) {
        case ScheduleEvent::Kind::SizeSet: session.set_size(ev.size); break;
        case ScheduleEvent::Kind::SizeDelta: session.apply_size_delta(ev.size); break;
        case ScheduleEvent::Kind::SimilaritySet: session.set_similarity(ev.similarity); break;
        case ScheduleEvent::Kind::SimilarityDelta:
          session.apply_similarity_delta(ev.similarity);
          break;
        case ScheduleEvent::Kind::Augment: {
          SimGraph extra = read_msg1(ev.graph_path);
          std::vector<WeightedEdge> bridges;
          if (!ev.bridges_path.empty()) bridges = read_bridges(ev.bridges_path);
          session.augment(extra, bridges, ev.text());
          break;
        }
      }
    } catch (const Error& e) {
      throw ScheduleError(step, e.what());
    }
    const HistoryRecord& h = session.history().back();
    records.push_back({step, ev.text(), "dcsel", h.alpha, h.size, h.feasible, h.wall_ns});
  }
  return records;
}

}  // namespace msel
