#pragma once

// Shared graph fixtures and independent reference computations for tests.
// Nothing here calls into the peel or session code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "msel/graph.hpp"

namespace msel::testing {

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Dense symmetric weight matrix, 0 where no edge.
inline std::vector<std::vector<double>> weight_matrix(const SimGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = e.weight;
  return w;
}

/// Pairwise sum straight off the matrix.
inline double brute_weight(const std::vector<std::vector<double>>& w,
                           const std::vector<NodeId>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) sum += w[f[i]][f[j]];
  }
  return sum;
}

inline double brute_alpha(const std::vector<std::vector<double>>& w,
                          const std::vector<NodeId>& f) {
  return f.empty() ? 0.0 : brute_weight(w, f) / static_cast<double>(f.size());
}

inline double brute_incident(const std::vector<std::vector<double>>& w, NodeId u,
                             const std::vector<NodeId>& f) {
  double sum = 0.0;
  for (NodeId t : f) {
    if (t != u) sum += w[u][t];
  }
  return sum;
}

/// G(n, p) with weights uniform in [lo, hi].
inline SimGraph random_graph(std::size_t n, double p, double lo, double hi,
                             std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0), weight(lo, hi);
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng) < p) edges.push_back({u, v, weight(rng)});
    }
  }
  return SimGraph(n, edges);
}

/// About m distinct random edges over n nodes, weights uniform in [lo, hi].
inline SimGraph random_sparse_graph(std::size_t n, std::size_t m, double lo, double hi,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::uniform_real_distribution<double> weight(lo, hi);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(m + m / 8);
  while (pairs.size() < m + m / 8) {
    NodeId u = pick(rng), v = pick(rng);
    if (u != v) pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::shuffle(pairs.begin(), pairs.end(), rng);
  if (pairs.size() > m) pairs.resize(m);
  std::vector<WeightedEdge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({u, v, weight(rng)});
  return SimGraph(n, edges);
}

inline SimGraph clique(std::size_t n, double w) {
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  }
  return SimGraph(n, edges);
}

/// Triangle {0,1,2} at 0.9 per edge and triangle {3,4,5} at 0.1 per edge.
inline SimGraph two_triangles() {
  std::vector<WeightedEdge> edges{{0, 1, 0.9}, {0, 2, 0.9}, {1, 2, 0.9},
                                  {3, 4, 0.1}, {3, 5, 0.1}, {4, 5, 0.1}};
  return SimGraph(6, edges);
}

/// Cluster A = triangle {0,1,2} at 0.9, cluster B = 5-clique {3..7} at 0.3,
/// one bridge 2-3 at 0.2.
inline SimGraph two_clusters() {
  std::vector<WeightedEdge> edges{{0, 1, 0.9}, {0, 2, 0.9}, {1, 2, 0.9}, {2, 3, 0.2}};
  for (NodeId u = 3; u < 8; ++u) {
    for (NodeId v = u + 1; v < 8; ++v) edges.push_back({u, v, 0.3});
  }
  return SimGraph(8, edges);
}

/// Six labelled nodes A=0, B=1, C=2, D=3, E=4, F=5.
/// The component {A,C,E,F} has W = 2.1 (alpha 0.525); removing A leaves
/// I(C) = 0.7 as the smallest incident weight. B-D sit in their own
/// component.
inline SimGraph walkthrough_graph() {
  std::vector<WeightedEdge> edges{
      {0, 2, 0.3}, {0, 4, 0.25}, {0, 5, 0.25},  // A
      {2, 4, 0.3}, {2, 5, 0.4},                 // C
      {4, 5, 0.6},                              // E-F
      {1, 3, 0.2},                              // B-D
  };
  return SimGraph(6, edges);
}

inline SimGraph star(std::size_t leaves, double w) {
  std::vector<WeightedEdge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v, w});
  return SimGraph(leaves + 1, edges);
}

inline std::vector<NodeId> random_subset(std::size_t n, std::mt19937_64& rng,
                                         std::size_t min_size = 1) {
  std::vector<NodeId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<NodeId>(i);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> size(std::min(min_size, n), n);
  all.resize(size(rng));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace msel::testing
