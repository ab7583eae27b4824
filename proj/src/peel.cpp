#include "msel/peel.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "msel/error.hpp"

namespace msel {

namespace {
constexpr std::uint32_t kAbsent = 0xffffffffu;
}

// ---------------------------------------------------------------------------
// PeelProfile

std::size_t PeelProfile::Entry::size() const noexcept {
  return (anchor ? anchor->size() : 0) + kept;
}

double PeelProfile::best_alpha(std::size_t k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? -1.0 : it->second.alpha;
}

NodeSet PeelProfile::members(std::size_t k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) return {};
  const Entry& e = it->second;
  NodeSet tail;
  if (e.order && e.kept > 0) {
    tail.assign(e.order->end() - static_cast<std::ptrdiff_t>(e.kept), e.order->end());
    std::sort(tail.begin(), tail.end());
  }
  if (!e.anchor || e.anchor->empty()) return tail;
  NodeSet out;
  out.reserve(e.anchor->size() + tail.size());
  std::merge(e.anchor->begin(), e.anchor->end(), tail.begin(), tail.end(),
             std::back_inserter(out));
  return out;
}

bool PeelProfile::offer(Entry entry) {
  const std::size_t k = entry.size();
  if (k == 0) return false;
  auto it = entries_.find(k);
  if (it != entries_.end() && !(entry.alpha > it->second.alpha)) return false;
  entries_[k] = std::move(entry);
  return true;
}

void PeelProfile::merge(const PeelProfile& other) {
  for (const auto& [k, e] : other.entries_) offer(e);
}

// ---------------------------------------------------------------------------
// Peeler

Peeler::Peeler(const SimGraph& g, std::span<const NodeId> scope, double s,
               PeelRule rule, std::uint64_t seed, std::span<const NodeId> anchor)
    : rule_(rule), s_(s), global_(scope.begin(), scope.end()) {
  std::sort(global_.begin(), global_.end());
  if (std::adjacent_find(global_.begin(), global_.end()) != global_.end()) {
    throw Error(ErrorKind::Precondition, "peel scope lists a node twice");
  }
  if (!global_.empty() && !g.contains(global_.back())) {
    throw Error(ErrorKind::InvalidNode,
                "peel scope node " + std::to_string(global_.back()) + " out of range");
  }
  const std::size_t n = global_.size();

  // Dense lookup for large scopes, binary search otherwise.
  std::vector<std::uint32_t> dense;
  const bool use_dense = n * 8 >= g.node_count();
  if (use_dense) {
    dense.assign(g.node_count(), kAbsent);
    for (std::size_t i = 0; i < n; ++i) dense[global_[i]] = static_cast<std::uint32_t>(i);
  }
  auto lookup = [&](NodeId u) -> std::uint32_t {
    if (use_dense) return dense[u];
    auto it = std::lower_bound(global_.begin(), global_.end(), u);
    return (it != global_.end() && *it == u)
               ? static_cast<std::uint32_t>(it - global_.begin())
               : kAbsent;
  };

  NodeSet anchor_sorted(anchor.begin(), anchor.end());
  std::sort(anchor_sorted.begin(), anchor_sorted.end());
  auto in_anchor = [&](NodeId u) {
    return std::binary_search(anchor_sorted.begin(), anchor_sorted.end(), u);
  };
  for (NodeId a : anchor_sorted) {
    if (lookup(a) != kAbsent) {
      throw Error(ErrorKind::Precondition,
                  "anchor node " + std::to_string(a) + " is also in the peel scope");
    }
  }
  anchor_size_ = anchor_sorted.size();
  if (!anchor_sorted.empty()) anchor_weight_ = msel::total_weight(anchor_sorted, g);

  offsets_.assign(n + 1, 0);
  live_.assign(n, 1);
  incident_.assign(n, 0.0);
  degree_.assign(n, 0);
  strong_.assign(n, 0);
  anchor_link_.assign(n, 0.0);
  version_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : g.neighbors(global_[i])) {
      std::uint32_t j = lookup(nb.id);
      if (j != kAbsent) {
        targets_.push_back(j);
        weights_.push_back(nb.weight);
        incident_[i] += nb.weight;
        ++degree_[i];
        if (nb.weight > s_) ++strong_[i];
      } else if (anchor_size_ > 0 && in_anchor(nb.id)) {
        anchor_link_[i] += nb.weight;
      }
    }
    offsets_[i + 1] = targets_.size();
  }
  live_count_ = n;
  for (std::size_t i = 0; i < n; ++i) {
    // Each edge counted from both ends; halve once at the end.
    total_weight_ += incident_[i];
    cross_weight_ += anchor_link_[i];
    if (strong_[i] == 0) ++weak_count_;
  }
  total_weight_ /= 2.0;

  if (rule_ == PeelRule::Random) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(perm[i - 1], perm[j]);
    }
    priority_.assign(n, 0.0);
    for (std::size_t pos = 0; pos < n; ++pos) priority_[perm[pos]] = static_cast<double>(pos);
  }

  heap_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) push(static_cast<std::uint32_t>(i));
}

double Peeler::key(std::uint32_t i) const {
  switch (rule_) {
    case PeelRule::MinIncident: return incident_[i];
    case PeelRule::MinDegree: return static_cast<double>(degree_[i]);
    case PeelRule::MinAverage:
      return degree_[i] == 0 ? 0.0 : incident_[i] / static_cast<double>(degree_[i]);
    case PeelRule::Random: return priority_[i];
  }
  return 0.0;
}

void Peeler::push(std::uint32_t i) {
  heap_.push_back({key(i), i, version_[i]});
  std::push_heap(heap_.begin(), heap_.end(), QueueOrder{});
  ++counters_.pushes;
}

void Peeler::remove(std::uint32_t i) {
  live_[i] = 0;
  --live_count_;
  total_weight_ -= incident_[i];
  cross_weight_ -= anchor_link_[i];
  // Cancellation leaves rounding residue; pin the exact zeros.
  if (live_count_ <= 1) total_weight_ = 0.0;
  if (live_count_ == 0) cross_weight_ = 0.0;
  if (strong_[i] == 0) --weak_count_;
  ++counters_.removals;
  const bool rekey = rule_ != PeelRule::Random;
  for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
    std::uint32_t j = targets_[e];
    if (!live_[j]) continue;
    incident_[j] -= weights_[e];
    if (--degree_[j] == 0) incident_[j] = 0.0;
    if (weights_[e] > s_ && --strong_[j] == 0) ++weak_count_;
    if (rekey) {
      ++version_[j];
      push(j);
    }
  }
}

std::size_t Peeler::prefilter() {
  std::vector<std::uint32_t> stack;
  for (std::size_t i = 0; i < global_.size(); ++i) {
    if (live_[i] && strong_[i] == 0) stack.push_back(static_cast<std::uint32_t>(i));
  }
  std::size_t dropped = 0;
  while (!stack.empty()) {
    std::uint32_t i = stack.back();
    stack.pop_back();
    if (!live_[i]) continue;
    remove(i);
    ++dropped;
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      std::uint32_t j = targets_[e];
      if (live_[j] && strong_[j] == 0) stack.push_back(j);
    }
  }
  return dropped;
}

std::optional<Peeler::Removal> Peeler::step() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), QueueOrder{});
    QueueItem item = heap_.back();
    heap_.pop_back();
    ++counters_.pops;
    if (!live_[item.local] || item.version != version_[item.local]) continue;
    Removal r{global_[item.local], incident_[item.local]};
    remove(item.local);
    return r;
  }
  return std::nullopt;
}

double Peeler::alpha() const noexcept {
  return live_count_ == 0 ? 0.0 : total_weight_ / static_cast<double>(live_count_);
}

double Peeler::combined_weight() const noexcept {
  return total_weight_ + anchor_weight_ + cross_weight_;
}

double Peeler::combined_alpha() const noexcept {
  const std::size_t k = live_count_ + anchor_size_;
  return k == 0 ? 0.0 : combined_weight() / static_cast<double>(k);
}

std::uint32_t Peeler::local_of(NodeId u) const {
  auto it = std::lower_bound(global_.begin(), global_.end(), u);
  if (it == global_.end() || *it != u) {
    throw Error(ErrorKind::InvalidNode, "node " + std::to_string(u) + " not in peel scope");
  }
  return static_cast<std::uint32_t>(it - global_.begin());
}

bool Peeler::is_live(NodeId u) const { return live_[local_of(u)] != 0; }

double Peeler::incident(NodeId u) const { return incident_[local_of(u)]; }

NodeSet Peeler::members() const {
  NodeSet out;
  out.reserve(live_count_);
  for (std::size_t i = 0; i < global_.size(); ++i) {
    if (live_[i]) out.push_back(global_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Peels

PeelResult peel(const SimGraph& g, std::span<const NodeId> scope,
                const ConstraintPair& c, const PeelOptions& options) {
  c.validate();
  PeelResult result;
  Peeler peeler(g, scope, c.s, options.rule, options.seed, options.anchor);
  result.prefiltered = peeler.prefilter();

  const std::size_t start = peeler.live_count();
  auto order = std::make_shared<std::vector<NodeId>>();
  order->reserve(start);
  std::vector<double> combined(start, -1.0);  // indexed by removals done

  bool found = false;
  double best_alpha = 0.0;
  double best_weight = 0.0;
  std::size_t best_at = 0;
  auto consider = [&](std::size_t removed) {
    if (peeler.live_count() == 0) return;
    combined[removed] = peeler.combined_alpha();
    if (peeler.live_count() > c.p && peeler.cohesive() &&
        (!found || peeler.alpha() > best_alpha)) {
      found = true;
      best_alpha = peeler.alpha();
      best_weight = peeler.total_weight();
      best_at = removed;
    }
  };

  consider(0);
  while (auto r = peeler.step()) {
    order->push_back(r->node);
    consider(order->size());
  }

  if (options.record_profile) {
    auto anchor_set = std::make_shared<NodeSet>(options.anchor.begin(), options.anchor.end());
    std::sort(anchor_set->begin(), anchor_set->end());
    for (std::size_t t = 0; t < start; ++t) {
      result.profile.offer({combined[t], anchor_set, order, start - t});
    }
  }
  if (found) {
    result.best.members.assign(order->begin() + static_cast<std::ptrdiff_t>(best_at),
                               order->end());
    std::sort(result.best.members.begin(), result.best.members.end());
    result.best.total_weight = best_weight;
    result.best.alpha = best_alpha;
  }
  result.order = *order;
  result.counters = peeler.counters();
  return result;
}

PeelResult modified_sgsel(const SimGraph& g, const ConstraintPair& c) {
  if (g.empty()) throw Error(ErrorKind::Precondition, "modified_sgsel needs a nonempty graph");
  NodeSet scope = all_nodes(g);
  return peel(g, scope, c);
}

NodeId argmin_incident(std::span<const NodeId> members,
                       std::span<const double> incident) {
  if (members.empty()) throw Error(ErrorKind::Precondition, "argmin over an empty set");
  if (members.size() != incident.size()) {
    throw Error(ErrorKind::Precondition, "incidence table does not match member list");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (incident[i] < incident[best] ||
        (incident[i] == incident[best] && members[i] < members[best])) {
      best = i;
    }
  }
  return members[best];
}

NodeSet all_nodes(const SimGraph& g) {
  NodeSet out(g.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<NodeId>(i);
  return out;
}

NodeSet complement(const SimGraph& g, std::span<const NodeId> excluded) {
  NodeSet out;
  out.reserve(g.node_count() - std::min(g.node_count(), excluded.size()));
  auto it = excluded.begin();
  for (NodeId u = 0; u < g.node_count(); ++u) {
    while (it != excluded.end() && *it < u) ++it;
    if (it != excluded.end() && *it == u) continue;
    out.push_back(u);
  }
  return out;
}

}  // namespace msel
