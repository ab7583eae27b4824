#include "msel/dcsel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <queue>
#include <string>

#include "msel/error.hpp"

namespace msel {

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::int64_t monotonic_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

NodeSet cohesive_core(std::span<const NodeId> members, const SimGraph& g, double s) {
  std::vector<std::uint8_t> in(g.node_count(), 0);
  for (NodeId u : members) {
    if (!g.contains(u)) throw Error(ErrorKind::InvalidNode, "node " + std::to_string(u));
    in[u] = 1;
  }
  std::vector<std::uint32_t> strong(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId u : members) {
    for (const auto& nb : g.neighbors(u)) {
      if (in[nb.id] && nb.weight > s) ++strong[u];
    }
    if (strong[u] == 0) stack.push_back(u);
  }
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (!in[u]) continue;
    in[u] = 0;
    for (const auto& nb : g.neighbors(u)) {
      if (in[nb.id] && nb.weight > s && --strong[nb.id] == 0) stack.push_back(nb.id);
    }
  }
  NodeSet out;
  for (NodeId u : members) {
    if (in[u]) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Session::Session(SimGraph g, const ConstraintPair& c)
    : Session(std::make_shared<const SimGraph>(std::move(g)), c) {}

Session::Session(std::shared_ptr<const SimGraph> g, const ConstraintPair& c)
    : graph_(std::move(g)), constraints_(c) {
  constraints_.validate();
  if (!graph_ || graph_->empty()) {
    throw Error(ErrorKind::Precondition, "a session needs a nonempty graph");
  }
  const auto start = monotonic_ns();
  restart();
  record("init p=" + std::to_string(c.p) + " s=" + format_real(c.s), start);
}

void Session::restart() {
  PeelResult res = modified_sgsel(*graph_, constraints_);
  ++counters_.peels;
  counters_.peel += res.counters;
  profile_ = std::move(res.profile);
  profile_s_ = constraints_.s;
  adopt(std::move(res.best));
}

void Session::adopt(Solution next) {
  current_ = std::move(next);
  refresh_feasible();
}

void Session::refresh_feasible() {
  // current_ is kept either empty or feasible for constraints_.
  feasible_ = !current_.empty();
}

void Session::record(std::string event, std::int64_t start_ns) {
  HistoryRecord r;
  r.event = std::move(event);
  r.alpha = current_.alpha;
  r.size = current_.size();
  r.feasible = feasible_;
  r.wall_ns = std::max<std::int64_t>(1, monotonic_ns() - start_ns);
  history_.push_back(std::move(r));
}

const Solution& Session::apply_size_delta(long long dp) {
  const long long p_new = static_cast<long long>(constraints_.p) + dp;
  return change_size(p_new, dp < 0 ? "p -= " + std::to_string(-dp)
                                   : "p += " + std::to_string(dp));
}

const Solution& Session::set_size(long long p) {
  return change_size(p, "p = " + std::to_string(p));
}

const Solution& Session::change_size(long long p_target, std::string label) {
  const auto start = monotonic_ns();
  if (p_target < 0) {
    throw Error(ErrorKind::Parameter,
                "size threshold would become " + std::to_string(p_target));
  }
  const std::size_t p_old = constraints_.p;
  const auto p_new = static_cast<std::size_t>(p_target);
  constraints_.p = p_new;
  if (p_new < p_old) {
    size_decrease(p_new);
  } else if (p_new > p_old) {
    size_increase(p_old, p_new);
  }
  record(std::move(label), start);
  return current_;
}

void Session::size_decrease(std::size_t p_new) {
  if (profile_s_ != constraints_.s) {
    // Profile was built under another similarity threshold; re-peel once.
    PeelResult res = modified_sgsel(*graph_, constraints_);
    ++counters_.peels;
    counters_.peel += res.counters;
    profile_ = std::move(res.profile);
    profile_s_ = constraints_.s;
    if (!res.best.empty() && (current_.empty() || res.best.alpha > current_.alpha)) {
      adopt(std::move(res.best));
    }
  }
  std::vector<const PeelProfile::Entry*> candidates;
  for (const auto& [k, e] : profile_.entries()) {
    if (k > p_new && (current_.empty() || e.alpha > current_.alpha)) {
      candidates.push_back(&e);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto* a, const auto* b) { return a->alpha > b->alpha; });
  for (const auto* e : candidates) {
    NodeSet members = profile_.members(e->size());
    if (is_cohesive(members, *graph_, constraints_.s)) {
      adopt(Solution::from_members(std::move(members), *graph_));
      return;
    }
  }
}

void Session::size_increase(std::size_t p_old, std::size_t p_new) {
  if (!current_.empty() && p_new < current_.size()) return;
  std::size_t budget = p_new - p_old;
  if (p_new >= current_.size()) budget = std::max(budget, p_new - current_.size());
  grow_from(budget);
}

void Session::grow_from(std::size_t budget) {
  if (current_.empty()) {
    PeelResult res = peel(*graph_, all_nodes(*graph_), constraints_);
    ++counters_.peels;
    counters_.peel += res.counters;
    profile_.merge(res.profile);
    adopt(std::move(res.best));
  } else {
    NodeSet scope = complement(*graph_, current_.members);
    PeelResult res = peel(*graph_, scope, {constraints_.s, budget},
                          {.anchor = current_.members});
    ++counters_.peels;
    counters_.peel += res.counters;
    profile_.merge(res.profile);
    if (!res.best.empty()) {
      adopt(Solution::from_members(set_union(current_.members, res.best.members), *graph_));
    } else {
      // Nothing large enough outside the group; fall back to a global peel.
      PeelResult full = modified_sgsel(*graph_, constraints_);
      ++counters_.peels;
      counters_.peel += full.counters;
      profile_.merge(full.profile);
      adopt(std::move(full.best));
    }
  }
  expand_greedy_impl();
}

const Solution& Session::apply_similarity_delta(double ds) {
  return change_similarity(constraints_.s + ds, ds < 0.0 ? "s -= " + format_real(-ds)
                                                         : "s += " + format_real(ds));
}

const Solution& Session::set_similarity(double s) {
  return change_similarity(s, "s = " + format_real(s));
}

const Solution& Session::change_similarity(double s_new, std::string label) {
  const auto start = monotonic_ns();
  if (!(s_new > 0.0 && s_new < 1.0)) {
    throw Error(ErrorKind::Parameter,
                "similarity threshold would become " + format_real(s_new));
  }
  const double s_old = constraints_.s;
  constraints_.s = s_new;
  if (s_new > s_old) {
    similarity_raise();
  } else if (s_new < s_old) {
    extend_search();
  }
  record(std::move(label), start);
  return current_;
}

void Session::similarity_raise() {
  if (current_.empty()) {
    grow_from(constraints_.p);
    return;
  }
  const double s = constraints_.s;
  NodeSet kept;
  for (NodeId u : current_.members) {
    if (graph_->max_weight(u) > s) kept.push_back(u);
  }
  NodeSet core = cohesive_core(kept, *graph_, s);
  if (core.size() == current_.size()) return;
  const std::size_t p = constraints_.p;
  if (core.size() > p) {
    adopt(Solution::from_members(std::move(core), *graph_));
    return;
  }
  // Treat the surviving core as a solution for size threshold |core|-1 and
  // raise the threshold back to p.
  const std::size_t budget = core.empty() ? p : p - core.size() + 1;
  adopt(Solution::from_members(std::move(core), *graph_));
  grow_from(budget);
}

void Session::extend_search() {
  if (current_.empty()) {
    grow_from(constraints_.p);
    return;
  }
  NodeSet scope = complement(*graph_, current_.members);
  PeelResult res = peel(*graph_, scope, constraints_, {.anchor = current_.members});
  ++counters_.peels;
  counters_.peel += res.counters;
  profile_.merge(res.profile);
  if (!res.best.empty()) {
    Solution joined =
        Solution::from_members(set_union(current_.members, res.best.members), *graph_);
    Solution* pick = &current_;
    if (joined.alpha > pick->alpha) pick = &joined;
    if (res.best.alpha > pick->alpha) pick = &res.best;
    if (pick != &current_) adopt(std::move(*pick));
  }
  expand_greedy_impl();
}

const Solution& Session::augment(const SimGraph& extra,
                                 std::span<const WeightedEdge> bridges,
                                 const std::string& label) {
  const auto start = monotonic_ns();
  if (extra.empty()) {
    if (!bridges.empty()) {
      throw Error(ErrorKind::InvalidNode, "bridges given for an empty added graph");
    }
  } else {
    graph_ = std::make_shared<const SimGraph>(merge_graphs(*graph_, extra, bridges));
    extend_search();
  }
  record(label, start);
  return current_;
}

const Solution& Session::expand_greedy() {
  const auto start = monotonic_ns();
  expand_greedy_impl();
  record("expand", start);
  return current_;
}

void Session::expand_greedy_impl() {
  if (current_.empty()) return;
  const SimGraph& g = *graph_;
  const double s = constraints_.s;
  std::vector<std::uint8_t> member(g.node_count(), 0);
  std::vector<double> inc(g.node_count(), 0.0);
  std::vector<std::uint8_t> strong(g.node_count(), 0);
  std::vector<std::uint32_t> version(g.node_count(), 0);

  struct Item {
    double inc;
    NodeId id;
    std::uint32_t version;
  };
  auto less = [](const Item& a, const Item& b) {
    return a.inc != b.inc ? a.inc < b.inc : a.id > b.id;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(less)> heap(less);

  for (NodeId u : current_.members) member[u] = 1;
  std::vector<NodeId> touched;
  for (NodeId u : current_.members) {
    for (const auto& nb : g.neighbors(u)) {
      if (member[nb.id]) continue;
      if (inc[nb.id] == 0.0) touched.push_back(nb.id);
      inc[nb.id] += nb.weight;
      if (nb.weight > s) strong[nb.id] = 1;
    }
  }
  for (NodeId v : touched) {
    if (strong[v]) heap.push({inc[v], v, version[v]});
  }

  NodeSet members = current_.members;
  double weight = current_.total_weight;
  bool grew = false;
  while (!heap.empty()) {
    Item top = heap.top();
    heap.pop();
    if (member[top.id] || top.version != version[top.id]) continue;
    if (!(top.inc > weight / static_cast<double>(members.size()))) break;
    member[top.id] = 1;
    members.push_back(top.id);
    weight += top.inc;
    grew = true;
    ++counters_.additions;
    for (const auto& nb : g.neighbors(top.id)) {
      if (member[nb.id]) continue;
      inc[nb.id] += nb.weight;
      if (nb.weight > s) strong[nb.id] = 1;
      if (strong[nb.id]) heap.push({inc[nb.id], nb.id, ++version[nb.id]});
    }
  }
  if (!grew) return;
  std::sort(members.begin(), members.end());
  Solution next;
  next.members = std::move(members);
  next.total_weight = weight;
  next.alpha = weight / static_cast<double>(next.members.size());
  adopt(std::move(next));
}

}  // namespace msel
