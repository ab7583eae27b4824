#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace msel {

using NodeId = std::uint32_t;

// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

struct Neighbor {
  NodeId id;
  double weight;
};

struct WeightedEdge {
  NodeId u;
  NodeId v;
  double weight;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Immutable undirected similarity graph. Adjacency is stored in CSR form
/// with every neighbor list sorted by id, so weight lookups are a binary
/// search. Weights lie in (0, 1].
class SimGraph {
 public:
  SimGraph() = default;

  /// Builds from an edge list in which every undirected pair appears once,
  /// in either orientation. Throws on self-loops, duplicate pairs, ids
  /// outside [0, n) and weights outside (0, 1].
  SimGraph(std::size_t n, std::span<const WeightedEdge> edges,
           std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
  bool empty() const noexcept { return node_count() == 0; }
  bool contains(NodeId u) const noexcept { return u < node_count(); }

  std::span<const Neighbor> neighbors(NodeId u) const;
  std::size_t degree(NodeId u) const { return neighbors(u).size(); }

  /// Weight of edge {u, v}, or 0 when absent.
  double weight(NodeId u, NodeId v) const;

  /// Largest incident edge weight, 0 for an isolated node.
  double max_weight(NodeId u) const;

  /// Optional per-node class tags carried from ingestion; empty if unset.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Every edge once with u < v, sorted by (u, v).
  std::vector<WeightedEdge> edges() const;

  friend bool operator==(const SimGraph& a, const SimGraph& b);

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<std::string> labels_;
};

/// Disjoint union of `base` and `extra` with extra's ids shifted by
/// base.node_count(). Bridge edges use base ids for u and extra-local ids
/// for v.
SimGraph merge_graphs(const SimGraph& base, const SimGraph& extra,
                      std::span<const WeightedEdge> bridges);

/// Subgraph induced by `members`, relabelled to 0..|members|-1 in the order
/// given.
SimGraph induced_subgraph(const SimGraph& g, std::span<const NodeId> members);

struct ConstraintPair {
  double s = 0.5;     // similarity threshold, strictly inside (0, 1)
  std::size_t p = 0;  // a feasible group has more than p members

  /// Validates 0 < s < 1 and p >= 0; throws Error(Parameter) otherwise.
  static ConstraintPair checked(double s, long long p);
  void validate() const;

  friend bool operator==(const ConstraintPair&, const ConstraintPair&) = default;
};

/// A candidate group with its cached objective.
struct Solution {
  NodeSet members;
  double total_weight = 0.0;
  double alpha = 0.0;

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }

  /// Sorts `members`, rejects duplicates and invalid ids, and computes
  /// W and alpha from scratch.
  static Solution from_members(NodeSet members, const SimGraph& g);
};

/// Sum of w[u,v] over unordered member pairs joined by an edge.
double total_weight(std::span<const NodeId> members, const SimGraph& g);

/// W(F) / |F|, 0 for the empty set.
double avg_similarity(std::span<const NodeId> members, const SimGraph& g);

/// Sum of w[u,t] over t in F, t != u. Whether u is itself in F does not
/// matter.
double incident_weight(NodeId u, std::span<const NodeId> members,
                       const SimGraph& g);

/// Sum of edge weights with one endpoint in `a` and the other in `b`.
/// The sets must be disjoint.
double cross_weight(std::span<const NodeId> a, std::span<const NodeId> b,
                    const SimGraph& g);

/// True iff every member has an edge of weight > s to another member.
bool is_cohesive(std::span<const NodeId> members, const SimGraph& g, double s);

/// |F| > p and every member has an in-group edge heavier than s.
bool is_feasible(std::span<const NodeId> members, const SimGraph& g,
                 const ConstraintPair& c);

}  // namespace msel
