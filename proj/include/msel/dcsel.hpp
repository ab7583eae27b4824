#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "msel/graph.hpp"
#include "msel/peel.hpp"

namespace msel {

struct HistoryRecord {
  std::string event;
  double alpha = 0.0;
  std::size_t size = 0;
  bool feasible = false;
  std::int64_t wall_ns = 0;
};

struct SessionCounters {
  PeelCounters peel;
  std::uint64_t peels = 0;      // peel runs, residual or global
  std::uint64_t additions = 0;  // nodes admitted by greedy expansion
};

/// Dynamic-constraint member selection session.
///
/// Holds the current group for the current (s, p) and a profile of the best
/// group seen at every size. Size decreases are answered from the profile,
/// size increases peel only the part of the graph outside the current
/// group, and similarity changes or graph growth repair the current group
/// instead of starting over.
class Session {
 public:
  /// Runs modified SGSEL on g under c.
  Session(SimGraph g, const ConstraintPair& c);
  Session(std::shared_ptr<const SimGraph> g, const ConstraintPair& c);

  const SimGraph& graph() const noexcept { return *graph_; }
  const ConstraintPair& constraints() const noexcept { return constraints_; }
  const Solution& current() const noexcept { return current_; }
  const PeelProfile& profile() const noexcept { return profile_; }
  bool feasible() const noexcept { return feasible_; }
  const std::vector<HistoryRecord>& history() const noexcept { return history_; }
  const SessionCounters& counters() const noexcept { return counters_; }

  /// p += dp. Throws Error(Parameter) if p would become negative.
  const Solution& apply_size_delta(long long dp);
  const Solution& set_size(long long p);

  /// s += ds. Throws Error(Parameter) unless the new s is inside (0, 1).
  const Solution& apply_similarity_delta(double ds);
  const Solution& set_similarity(double s);

  /// Adds `extra` as new nodes n..n+n'-1 together with bridge edges
  /// (u in the current graph, v local to extra), then repairs the group.
  const Solution& augment(const SimGraph& extra, std::span<const WeightedEdge> bridges,
                          const std::string& label = "augment");

  /// Admits outside nodes with an edge heavier than s into the group, always
  /// taking the one with the largest I_F(u), while I_F(u) > alpha(F).
  const Solution& expand_greedy();

 private:
  const Solution& change_size(long long p_target, std::string label);
  const Solution& change_similarity(double s_new, std::string label);
  void size_increase(std::size_t p_old, std::size_t p_new);
  void size_decrease(std::size_t p_new);
  void similarity_raise();
  void extend_search();
  void grow_from(std::size_t budget);
  void restart();
  void expand_greedy_impl();
  void adopt(Solution next);
  void record(std::string event, std::int64_t start_ns);
  void refresh_feasible();

  std::shared_ptr<const SimGraph> graph_;
  ConstraintPair constraints_;
  Solution current_;
  PeelProfile profile_;
  double profile_s_ = 0.0;
  bool feasible_ = false;
  std::vector<HistoryRecord> history_;
  SessionCounters counters_;
};

/// Strong core of `members` at threshold s: repeatedly drops members with no
/// in-group edge heavier than s.
NodeSet cohesive_core(std::span<const NodeId> members, const SimGraph& g, double s);

std::int64_t monotonic_ns();

}  // namespace msel
