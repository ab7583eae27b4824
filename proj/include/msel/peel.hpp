#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "msel/graph.hpp"

namespace msel {

/// Best objective seen at each group size during one or more peels.
///
/// Entries are stored compactly: a shared anchor set plus the tail of a
/// shared removal order, so a whole peel costs O(n) memory rather than
/// O(n^2). `members(k)` materializes the sorted set.
class PeelProfile {
 public:
  struct Entry {
    double alpha = -1.0;
    std::shared_ptr<const NodeSet> anchor;
    std::shared_ptr<const std::vector<NodeId>> order;
    std::size_t kept = 0;  // last `kept` ids of `order` are members

    std::size_t size() const noexcept;
  };

  /// -1 when nothing was recorded at size k.
  double best_alpha(std::size_t k) const;
  /// Empty when nothing was recorded at size k.
  NodeSet members(std::size_t k) const;

  /// Stores the entry if its alpha beats the one held for its size.
  bool offer(Entry entry);
  void merge(const PeelProfile& other);

  const std::map<std::size_t, Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  void clear() { entries_.clear(); }

 private:
  std::map<std::size_t, Entry> entries_;
};

enum class PeelRule {
  MinIncident,  // argmin I_F(u), the modified SGSEL order
  MinDegree,    // argmin unweighted in-group degree
  MinAverage,   // argmin I_F(u) / |N_F(u)|, 0 when u has no in-group neighbor
  Random,       // seeded uniform order
};

struct PeelCounters {
  std::uint64_t pushes = 0;
  std::uint64_t pops = 0;
  std::uint64_t removals = 0;  // prefilter removals plus peel steps

  PeelCounters& operator+=(const PeelCounters& o) {
    pushes += o.pushes;
    pops += o.pops;
    removals += o.removals;
    return *this;
  }
};

/// Incremental peel over the subgraph induced by `scope`. Keeps the live
/// set F, I_F(u) for every live u, W(F), in-group degrees and how many
/// live members currently lack an in-group edge heavier than s.
///
/// An optional `anchor` (disjoint from scope) is held fixed: it is never
/// peeled, does not affect the removal order, but combined_alpha() reports
/// alpha(anchor ∪ F).
class Peeler {
 public:
  struct Removal {
    NodeId node;
    double incident;  // I_F(node) just before removal
  };

  Peeler(const SimGraph& g, std::span<const NodeId> scope, double s,
         PeelRule rule = PeelRule::MinIncident, std::uint64_t seed = 0,
         std::span<const NodeId> anchor = {});

  /// Drops live nodes with no in-group edge heavier than s, repeating until
  /// none remain. Returns how many were dropped.
  std::size_t prefilter();

  /// Removes the node chosen by the rule; ties go to the smallest id.
  std::optional<Removal> step();

  std::size_t live_count() const noexcept { return live_count_; }
  double total_weight() const noexcept { return total_weight_; }
  double alpha() const noexcept;
  double combined_alpha() const noexcept;
  double combined_weight() const noexcept;
  bool cohesive() const noexcept { return weak_count_ == 0; }
  bool is_live(NodeId u) const;
  /// Current I_F(u) as maintained incrementally; u must be in scope.
  double incident(NodeId u) const;
  NodeSet members() const;
  std::span<const NodeId> scope() const noexcept { return global_; }
  const PeelCounters& counters() const noexcept { return counters_; }

 private:
  struct QueueItem {
    double key;
    std::uint32_t local;
    std::uint32_t version;
  };
  struct QueueOrder {
    bool operator()(const QueueItem& a, const QueueItem& b) const {
      return a.key != b.key ? a.key > b.key : a.local > b.local;
    }
  };

  double key(std::uint32_t i) const;
  void push(std::uint32_t i);
  void remove(std::uint32_t i);
  std::uint32_t local_of(NodeId u) const;

  PeelRule rule_;
  double s_;
  std::vector<NodeId> global_;  // local id -> global id, ascending
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<double> weights_;
  std::vector<std::uint8_t> live_;
  std::vector<double> incident_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> strong_;
  std::vector<double> anchor_link_;
  std::vector<double> priority_;  // Random rule only
  std::vector<std::uint32_t> version_;
  std::vector<QueueItem> heap_;
  std::size_t live_count_ = 0;
  std::size_t weak_count_ = 0;
  double total_weight_ = 0.0;
  double anchor_weight_ = 0.0;
  double cross_weight_ = 0.0;
  std::size_t anchor_size_ = 0;
  PeelCounters counters_;
};

struct PeelResult {
  Solution best;            // empty when no feasible intermediate set exists
  PeelProfile profile;      // keyed by |anchor ∪ F|
  std::vector<NodeId> order;  // peel removal order after prefiltering
  std::size_t prefiltered = 0;
  PeelCounters counters;
};

struct PeelOptions {
  PeelRule rule = PeelRule::MinIncident;
  std::uint64_t seed = 0;              // Random rule only
  std::span<const NodeId> anchor = {};  // fixed set; only shifts profile keys/values
  bool record_profile = true;
};

/// Full peel of `scope` after the similarity prefilter. The live set is
/// evaluated before the first removal and after every removal; the best set
/// with more than c.p members and no weak member is kept.
PeelResult peel(const SimGraph& g, std::span<const NodeId> scope,
                const ConstraintPair& c, const PeelOptions& options = {});

/// Modified SGSEL: one global min-incident-weight peel of g after the
/// similarity prefilter, recording the per-size profile.
PeelResult modified_sgsel(const SimGraph& g, const ConstraintPair& c);

/// Member with the smallest incident weight, ties to the smallest id.
/// `incident[i]` belongs to `members[i]`.
NodeId argmin_incident(std::span<const NodeId> members,
                       std::span<const double> incident);

/// Every node of g, 0..n-1.
NodeSet all_nodes(const SimGraph& g);

/// Nodes of g not in `excluded` (which must be sorted).
NodeSet complement(const SimGraph& g, std::span<const NodeId> excluded);

}  // namespace msel
