#include "msel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msel/error.hpp"

namespace msel {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidNode: return "invalid node";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::Parameter: return "invalid parameter";
    case ErrorKind::Capacity: return "capacity exceeded";
    case ErrorKind::Data: return "data error";
    case ErrorKind::Format: return "format error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

namespace {

void check_node(const SimGraph& g, NodeId u) {
  if (!g.contains(u)) {
    throw Error(ErrorKind::InvalidNode,
                "node " + std::to_string(u) + " out of range (n=" +
                    std::to_string(g.node_count()) + ")");
  }
}

// Membership mask over all of g; rejects invalid and repeated ids.
std::vector<std::uint8_t> member_mask(std::span<const NodeId> members,
                                      const SimGraph& g) {
  std::vector<std::uint8_t> mask(g.node_count(), 0);
  for (NodeId u : members) {
    check_node(g, u);
    if (mask[u]) {
      throw Error(ErrorKind::Precondition,
                  "node " + std::to_string(u) + " listed twice");
    }
    mask[u] = 1;
  }
  return mask;
}

}  // namespace

SimGraph::SimGraph(std::size_t n, std::span<const WeightedEdge> edges,
                   std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != n) {
    throw Error(ErrorKind::Precondition, "label count does not match node count");
  }
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorKind::InvalidNode,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") references a node >= " + std::to_string(n));
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::Precondition,
                  "self-loop on node " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0 && e.weight <= 1.0)) {
      throw Error(ErrorKind::Data, "edge weight " + std::to_string(e.weight) +
                                       " outside (0, 1]");
    }
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + degree[u];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t u = 0; u < n; ++u) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
    std::sort(first, last,
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    auto dup = std::adjacent_find(
        first, last, [](const Neighbor& a, const Neighbor& b) { return a.id == b.id; });
    if (dup != last) {
      throw Error(ErrorKind::Precondition, "duplicate edge (" + std::to_string(u) +
                                               "," + std::to_string(dup->id) + ")");
    }
  }
}

std::span<const Neighbor> SimGraph::neighbors(NodeId u) const {
  check_node(*this, u);
  return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

double SimGraph::weight(NodeId u, NodeId v) const {
  auto adj = neighbors(u);
  check_node(*this, v);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Neighbor& a, NodeId id) { return a.id < id; });
  return (it != adj.end() && it->id == v) ? it->weight : 0.0;
}

double SimGraph::max_weight(NodeId u) const {
  double best = 0.0;
  for (const auto& nb : neighbors(u)) best = std::max(best, nb.weight);
  return best;
}

std::vector<WeightedEdge> SimGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const auto& nb : neighbors(u)) {
      if (u < nb.id) out.push_back({u, nb.id, nb.weight});
    }
  }
  return out;
}

bool operator==(const SimGraph& a, const SimGraph& b) {
  if (a.offsets_ != b.offsets_ || a.labels_ != b.labels_) return false;
  return std::equal(a.adjacency_.begin(), a.adjacency_.end(), b.adjacency_.begin(),
                    b.adjacency_.end(), [](const Neighbor& x, const Neighbor& y) {
                      return x.id == y.id && x.weight == y.weight;
                    });
}

SimGraph merge_graphs(const SimGraph& base, const SimGraph& extra,
                      std::span<const WeightedEdge> bridges) {
  const auto shift = static_cast<NodeId>(base.node_count());
  std::vector<WeightedEdge> edges = base.edges();
  edges.reserve(edges.size() + extra.edge_count() + bridges.size());
  for (auto e : extra.edges()) edges.push_back({e.u + shift, e.v + shift, e.weight});
  for (const auto& b : bridges) {
    if (!base.contains(b.u)) {
      throw Error(ErrorKind::InvalidNode,
                  "bridge endpoint " + std::to_string(b.u) + " not in base graph");
    }
    if (!extra.contains(b.v)) {
      throw Error(ErrorKind::InvalidNode,
                  "bridge endpoint " + std::to_string(b.v) + " not in added graph");
    }
    edges.push_back({b.u, b.v + shift, b.weight});
  }
  std::vector<std::string> labels;
  if (!base.labels().empty() || !extra.labels().empty()) {
    labels = base.labels();
    labels.resize(base.node_count());
    labels.insert(labels.end(), extra.labels().begin(), extra.labels().end());
    labels.resize(base.node_count() + extra.node_count());
  }
  return SimGraph(base.node_count() + extra.node_count(), edges, std::move(labels));
}

SimGraph induced_subgraph(const SimGraph& g, std::span<const NodeId> members) {
  auto mask = member_mask(members, g);
  std::vector<NodeId> local(g.node_count(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    local[members[i]] = static_cast<NodeId>(i);
  }
  std::vector<WeightedEdge> edges;
  for (NodeId u : members) {
    for (const auto& nb : g.neighbors(u)) {
      if (u < nb.id && mask[nb.id]) edges.push_back({local[u], local[nb.id], nb.weight});
    }
  }
  return SimGraph(members.size(), edges);
}

ConstraintPair ConstraintPair::checked(double s, long long p) {
  if (p < 0) {
    throw Error(ErrorKind::Parameter,
                "size threshold p must be >= 0, got " + std::to_string(p));
  }
  ConstraintPair c{s, static_cast<std::size_t>(p)};
  c.validate();
  return c;
}

void ConstraintPair::validate() const {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorKind::Parameter,
                "similarity threshold s must lie in (0, 1), got " + std::to_string(s));
  }
}

Solution Solution::from_members(NodeSet members, const SimGraph& g) {
  std::sort(members.begin(), members.end());
  Solution sol;
  sol.total_weight = msel::total_weight(members, g);
  sol.alpha = members.empty() ? 0.0 : sol.total_weight / static_cast<double>(members.size());
  sol.members = std::move(members);
  return sol;
}

double total_weight(std::span<const NodeId> members, const SimGraph& g) {
  auto mask = member_mask(members, g);
  double sum = 0.0;
  for (NodeId u : members) {
    for (const auto& nb : g.neighbors(u)) {
      if (u < nb.id && mask[nb.id]) sum += nb.weight;
    }
  }
  return sum;
}

double avg_similarity(std::span<const NodeId> members, const SimGraph& g) {
  if (members.empty()) return 0.0;
  return total_weight(members, g) / static_cast<double>(members.size());
}

double incident_weight(NodeId u, std::span<const NodeId> members,
                       const SimGraph& g) {
  check_node(g, u);
  double sum = 0.0;
  for (NodeId t : members) {
    check_node(g, t);
    if (t != u) sum += g.weight(u, t);
  }
  return sum;
}

double cross_weight(std::span<const NodeId> a, std::span<const NodeId> b,
                    const SimGraph& g) {
  auto in_a = member_mask(a, g);
  auto in_b = member_mask(b, g);
  for (NodeId u : a) {
    if (in_b[u]) {
      throw Error(ErrorKind::Precondition,
                  "cross_weight: node " + std::to_string(u) + " in both sets");
    }
  }
  double sum = 0.0;
  for (NodeId u : a) {
    for (const auto& nb : g.neighbors(u)) {
      if (in_b[nb.id]) sum += nb.weight;
    }
  }
  return sum;
}

bool is_cohesive(std::span<const NodeId> members, const SimGraph& g, double s) {
  auto mask = member_mask(members, g);
  for (NodeId u : members) {
    auto adj = g.neighbors(u);
    bool ok = std::any_of(adj.begin(), adj.end(), [&](const Neighbor& nb) {
      return mask[nb.id] && nb.weight > s;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_feasible(std::span<const NodeId> members, const SimGraph& g,
                 const ConstraintPair& c) {
  if (members.size() <= c.p) {
    // still validate ids so bad input is reported consistently
    member_mask(members, g);
    return false;
  }
  return is_cohesive(members, g, c.s);
}

}  // namespace msel
