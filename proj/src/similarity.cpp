#include "msel/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "msel/error.hpp"
#include "msel/parallel.hpp"

namespace msel {

AttributeMatrix::AttributeMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorKind::Precondition, "attribute matrix is " + std::to_string(rows_) +
                                             "x" + std::to_string(cols_) + " but holds " +
                                             std::to_string(values_.size()) + " values");
  }
}

AttributeMatrix normalize_attributes(const AttributeMatrix& raw) {
  if (raw.rows() == 0 || raw.cols() == 0) {
    throw Error(ErrorKind::Data, "attribute matrix must have at least one row and column");
  }
  const std::size_t n = raw.rows(), d = raw.cols();
  std::vector<double> lo(d, 0.0), hi(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double v = raw.at(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::Data, "non-finite attribute at row " + std::to_string(i) +
                                         ", column " + std::to_string(j));
      }
      if (i == 0 || v < lo[j]) lo[j] = v;
      if (i == 0 || v > hi[j]) hi[j] = v;
    }
  }
  std::vector<double> out(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double span = hi[j] - lo[j];
      out[i * d + j] = span > 0.0 ? (raw.at(i, j) - lo[j]) / span : 0.0;
    }
  }
  return AttributeMatrix(n, d, std::move(out));
}

double pair_weight(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::Precondition, "feature dimension mismatch: " +
                                             std::to_string(x.size()) + " vs " +
                                             std::to_string(y.size()));
  }
  if (x.empty()) throw Error(ErrorKind::Precondition, "feature dimension must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double agree = 1.0 - std::abs(x[i] - y[i]);
    sum += agree * agree;
  }
  return std::min(1.0, std::sqrt(sum / static_cast<double>(x.size())));
}

BuildMode BuildMode::parse(const std::string& text) {
  if (text == "edges") return {Kind::Edges, 0};
  if (text == "full") return {Kind::Full, 0};
  if (text.rfind("knn:", 0) == 0) {
    const std::string digits = text.substr(4);
    char* end = nullptr;
    long long k = std::strtoll(digits.c_str(), &end, 10);
    if (!digits.empty() && end != nullptr && *end == '\0' && k >= 1) {
      return {Kind::Knn, static_cast<std::size_t>(k)};
    }
  }
  throw Error(ErrorKind::Parameter,
              "unknown build mode '" + text + "' (expected edges, knn:K or full)");
}

std::string BuildMode::to_string() const {
  switch (kind) {
    case Kind::Edges: return "edges";
    case Kind::Full: return "full";
    case Kind::Knn: return "knn:" + std::to_string(k);
  }
  return "edges";
}

namespace {

void check_unit_range(const AttributeMatrix& x) {
  for (double v : x.values()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::Data,
                  "attributes must be normalized to [0, 1] before weighting");
    }
  }
}

std::vector<WeightedEdge> weigh_structural(
    const AttributeMatrix& x, std::span<const std::pair<NodeId, NodeId>> structural) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(structural.size());
  for (auto [u, v] : structural) {
    if (u >= x.rows() || v >= x.rows()) {
      throw Error(ErrorKind::InvalidNode, "structural edge (" + std::to_string(u) + "," +
                                              std::to_string(v) + ") outside " +
                                              std::to_string(x.rows()) + " nodes");
    }
    if (u == v) continue;
    pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<double> w(pairs.size());
  parallel_chunks(pairs.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      w[i] = pair_weight(x.row(pairs[i].first), x.row(pairs[i].second));
    }
  });
  std::vector<WeightedEdge> edges;
  edges.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (w[i] > 0.0) edges.push_back({pairs[i].first, pairs[i].second, w[i]});
  }
  return edges;
}

std::vector<WeightedEdge> weigh_knn(const AttributeMatrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  if (k >= n) {
    throw Error(ErrorKind::Parameter, "knn k=" + std::to_string(k) +
                                          " must be smaller than node count " +
                                          std::to_string(n));
  }
  std::vector<std::vector<std::pair<NodeId, double>>> picks(n);
  parallel_chunks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::pair<NodeId, double>> cand;
    for (std::size_t u = begin; u < end; ++u) {
      cand.clear();
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u) continue;
        double w = pair_weight(x.row(u), x.row(v));
        if (w > 0.0) cand.emplace_back(static_cast<NodeId>(v), w);
      }
      auto by_weight = [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
      };
      std::size_t keep = std::min(k, cand.size());
      std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep),
                        cand.end(), by_weight);
      cand.resize(keep);
      picks[u] = cand;
    }
  });
  std::vector<WeightedEdge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (auto [v, w] : picks[u]) {
      edges.push_back({std::min<NodeId>(static_cast<NodeId>(u), v),
                       std::max<NodeId>(static_cast<NodeId>(u), v), w});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const auto& a, const auto& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  return edges;
}

std::vector<WeightedEdge> weigh_full(const AttributeMatrix& x) {
  const std::size_t n = x.rows();
  if (n > kFullModeNodeLimit) {
    throw Error(ErrorKind::Capacity, "full mode refuses " + std::to_string(n) +
                                         " nodes (limit " +
                                         std::to_string(kFullModeNodeLimit) + ")");
  }
  std::vector<std::vector<WeightedEdge>> rows(n);
  parallel_chunks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        double w = pair_weight(x.row(u), x.row(v));
        if (w > 0.0) rows[u].push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
      }
    }
  });
  std::vector<WeightedEdge> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return edges;
}

}  // namespace

SimGraph build_similarity_graph(const AttributeMatrix& x,
                                std::span<const std::pair<NodeId, NodeId>> structural,
                                BuildMode mode, std::vector<std::string> labels) {
  check_unit_range(x);
  std::vector<WeightedEdge> edges;
  switch (mode.kind) {
    case BuildMode::Kind::Edges: edges = weigh_structural(x, structural); break;
    case BuildMode::Kind::Knn: edges = weigh_knn(x, mode.k); break;
    case BuildMode::Kind::Full: edges = weigh_full(x); break;
  }
  return SimGraph(x.rows(), edges, std::move(labels));
}

}  // namespace msel
