#include "msel/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "msel/error.hpp"

namespace msel {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_blank_or_comment(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// content / cites

RawDataset parse_content_cites(std::istream& content, std::istream& cites,
                               const std::string& content_name,
                               const std::string& cites_name) {
  RawDataset ds;
  std::unordered_map<std::string, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(content, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() < 3) {
      throw FormatError(content_name, lineno, "expected `id f1 ... fd label`");
    }
    NodeRecord rec;
    rec.id = std::string(tok.front());
    rec.label = std::string(tok.back());
    rec.features.resize(tok.size() - 2);
    for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
      if (!parse_number(tok[i], rec.features[i - 1]) || !std::isfinite(rec.features[i - 1])) {
        throw FormatError(content_name, lineno,
                          "bad feature value '" + std::string(tok[i]) + "'");
      }
    }
    if (!ds.nodes.empty() && rec.features.size() != ds.feature_count()) {
      throw FormatError(content_name, lineno,
                        "expected " + std::to_string(ds.feature_count()) +
                            " features, found " + std::to_string(rec.features.size()));
    }
    if (!index.emplace(rec.id, ds.nodes.size()).second) {
      throw FormatError(content_name, lineno, "duplicate node id '" + rec.id + "'");
    }
    ds.nodes.push_back(std::move(rec));
  }
  lineno = 0;
  while (std::getline(cites, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw FormatError(cites_name, lineno, "expected `cited citing`");
    std::string cited(tok[0]), citing(tok[1]);
    if (!index.count(cited) || !index.count(citing)) {
      ++ds.dropped_cites;
      continue;
    }
    ds.cites.emplace_back(std::move(cited), std::move(citing));
  }
  return ds;
}

RawDataset load_content_cites(const std::filesystem::path& content,
                              const std::filesystem::path& cites) {
  auto c = open_input(content);
  auto e = open_input(cites);
  return parse_content_cites(c, e, content.string(), cites.string());
}

std::vector<std::pair<NodeId, NodeId>> structural_edges(const RawDataset& ds) {
  std::unordered_map<std::string_view, NodeId> index;
  index.reserve(ds.nodes.size());
  for (std::size_t i = 0; i < ds.nodes.size(); ++i) {
    index.emplace(ds.nodes[i].id, static_cast<NodeId>(i));
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(ds.cites.size());
  for (const auto& [cited, citing] : ds.cites) {
    auto a = index.find(cited), b = index.find(citing);
    if (a == index.end() || b == index.end() || a->second == b->second) continue;
    edges.emplace_back(std::min(a->second, b->second), std::max(a->second, b->second));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

SimGraph to_sim_graph(const RawDataset& ds, BuildMode mode) {
  if (ds.nodes.empty()) return SimGraph{};
  const std::size_t n = ds.nodes.size(), d = ds.feature_count();
  std::vector<double> values;
  values.reserve(n * d);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& rec : ds.nodes) {
    values.insert(values.end(), rec.features.begin(), rec.features.end());
    labels.push_back(rec.label);
  }
  AttributeMatrix x = normalize_attributes(AttributeMatrix(n, d, std::move(values)));
  auto edges = structural_edges(ds);
  return build_similarity_graph(x, edges, mode, std::move(labels));
}

// ---------------------------------------------------------------------------
// MSG1

std::string format_weight(double w) {
  char buf[48];
  for (int digits = 6; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%#.*g", digits, w);
    if (std::strtod(buf, nullptr) == w) break;
  }
  return buf;
}

void write_msg1(const SimGraph& g, std::ostream& out) {
  out << "MSG1\n" << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_weight(e.weight) << '\n';
  }
}

void write_msg1(const SimGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_msg1(g, out);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

SimGraph parse_msg1(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!is_blank_or_comment(line)) return true;
    }
    return false;
  };

  if (!next() || split_ws(line) != std::vector<std::string_view>{"MSG1"}) {
    throw FormatError(name, lineno, "missing MSG1 magic line");
  }
  if (!next()) throw FormatError(name, lineno, "missing `N M` header");
  auto header = split_ws(line);
  std::size_t n = 0, m = 0;
  if (header.size() != 2 || !parse_number(header[0], n) || !parse_number(header[1], m)) {
    throw FormatError(name, lineno, "expected `N M` header");
  }

  struct Parsed {
    WeightedEdge edge;
    std::size_t line;
  };
  std::vector<Parsed> parsed;
  parsed.reserve(m);
  while (next()) {
    if (parsed.size() == m) {
      throw FormatError(name, lineno, "more than the declared " + std::to_string(m) + " edges");
    }
    auto tok = split_ws(line);
    NodeId u = 0, v = 0;
    double w = 0.0;
    if (tok.size() != 3 || !parse_number(tok[0], u) || !parse_number(tok[1], v) ||
        !parse_number(tok[2], w)) {
      throw FormatError(name, lineno, "expected `u v w`");
    }
    if (!(u < v)) throw FormatError(name, lineno, "edge must satisfy u < v");
    if (v >= n) throw FormatError(name, lineno, "node id " + std::to_string(v) + " >= N");
    if (!(w > 0.0 && w <= 1.0)) throw FormatError(name, lineno, "weight outside (0, 1]");
    parsed.push_back({{u, v, w}, lineno});
  }
  if (parsed.size() != m) {
    throw FormatError(name, lineno, "declared " + std::to_string(m) + " edges, found " +
                                        std::to_string(parsed.size()));
  }
  std::vector<const Parsed*> sorted;
  sorted.reserve(parsed.size());
  for (const auto& p : parsed) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Parsed* a, const Parsed* b) {
    if (a->edge.u != b->edge.u) return a->edge.u < b->edge.u;
    if (a->edge.v != b->edge.v) return a->edge.v < b->edge.v;
    return a->line < b->line;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->edge.u == sorted[i - 1]->edge.u &&
        sorted[i]->edge.v == sorted[i - 1]->edge.v) {
      throw FormatError(name, sorted[i]->line, "duplicate edge");
    }
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(parsed.size());
  for (const auto& p : parsed) edges.push_back(p.edge);
  return SimGraph(n, edges);
}

SimGraph read_msg1(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_msg1(in, path.string());
}

std::vector<WeightedEdge> parse_bridges(std::istream& in, const std::string& name) {
  std::vector<WeightedEdge> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    auto tok = split_ws(line);
    WeightedEdge e{};
    if (tok.size() != 3 || !parse_number(tok[0], e.u) || !parse_number(tok[1], e.v) ||
        !parse_number(tok[2], e.weight)) {
      throw FormatError(name, lineno, "expected `u v w`");
    }
    if (!(e.weight > 0.0 && e.weight <= 1.0)) {
      throw FormatError(name, lineno, "weight outside (0, 1]");
    }
    out.push_back(e);
  }
  return out;
}

std::vector<WeightedEdge> read_bridges(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_bridges(in, path.string());
}

// ---------------------------------------------------------------------------
// stats

DatasetStats dataset_stats(const SimGraph& g, std::size_t features) {
  return {g.node_count(), g.edge_count(), features};
}

DatasetStats dataset_stats(const RawDataset& ds) {
  return {ds.nodes.size(), structural_edges(ds).size(), ds.feature_count()};
}

}  // namespace msel
