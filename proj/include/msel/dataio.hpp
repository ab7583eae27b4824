#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "msel/graph.hpp"
#include "msel/similarity.hpp"

namespace msel {

struct NodeRecord {
  std::string id;
  std::vector<double> features;
  std::string label;
};

/// Citation network as read from content/cites files.
struct RawDataset {
  std::vector<NodeRecord> nodes;  // in file order
  std::vector<std::pair<std::string, std::string>> cites;  // (cited, citing)
  std::size_t dropped_cites = 0;  // citations naming an unknown paper

  std::size_t feature_count() const noexcept {
    return nodes.empty() ? 0 : nodes.front().features.size();
  }
};

/// content: `id f1 ... fd label` per line; cites: `cited citing` per line.
RawDataset load_content_cites(const std::filesystem::path& content,
                              const std::filesystem::path& cites);
RawDataset parse_content_cites(std::istream& content, std::istream& cites,
                               const std::string& content_name = "content",
                               const std::string& cites_name = "cites");

/// Dense ids in content-file order; citations symmetrized, deduplicated and
/// stripped of self-citations; features min-max normalized, then weighted
/// per `mode`.
SimGraph to_sim_graph(const RawDataset& ds, BuildMode mode);

/// Undirected structural edges of the dataset in dense ids, u < v, sorted.
std::vector<std::pair<NodeId, NodeId>> structural_edges(const RawDataset& ds);

SimGraph read_msg1(const std::filesystem::path& path);
SimGraph parse_msg1(std::istream& in, const std::string& name = "<msg1>");
void write_msg1(const SimGraph& g, const std::filesystem::path& path);
void write_msg1(const SimGraph& g, std::ostream& out);

/// Shortest decimal with at least 6 significant digits that reads back to
/// exactly `w`.
std::string format_weight(double w);

/// Bridge list for augmentation: `u v w` lines, `#` comments.
std::vector<WeightedEdge> read_bridges(const std::filesystem::path& path);
std::vector<WeightedEdge> parse_bridges(std::istream& in, const std::string& name);

struct DatasetStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t features = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

DatasetStats dataset_stats(const SimGraph& g, std::size_t features);
DatasetStats dataset_stats(const RawDataset& ds);

}  // namespace msel
