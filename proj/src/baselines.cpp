#include "msel/baselines.hpp"

#include <algorithm>
#include <vector>

#include "msel/parallel.hpp"
#include "msel/peel.hpp"

namespace msel {

NodeSet two_hop_ball(const SimGraph& g, NodeId v) {
  NodeSet ball{v};
  for (const auto& a : g.neighbors(v)) {
    ball.push_back(a.id);
    for (const auto& b : g.neighbors(a.id)) ball.push_back(b.id);
  }
  std::sort(ball.begin(), ball.end());
  ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
  return ball;
}

Solution sgsel(const SimGraph& g, const ConstraintPair& c) {
  c.validate();
  const std::size_t n = g.node_count();
  const std::size_t workers = thread_budget();
  std::vector<Solution> partial(std::max<std::size_t>(1, std::min(workers, n)));
  parallel_chunks(
      n,
      [&](std::size_t worker, std::size_t begin, std::size_t end) {
        Solution& best = partial[worker];
        for (std::size_t v = begin; v < end; ++v) {
          NodeSet ball = two_hop_ball(g, static_cast<NodeId>(v));
          if (ball.size() <= c.p) continue;
          PeelResult r = peel(g, ball, c, {.record_profile = false});
          if (!r.best.empty() && (best.empty() || r.best.alpha > best.alpha)) {
            best = std::move(r.best);
          }
        }
      },
      partial.size());
  Solution best;
  for (auto& s : partial) {
    if (!s.empty() && (best.empty() || s.alpha > best.alpha)) best = std::move(s);
  }
  return best;
}

Solution random_peel(const SimGraph& g, const ConstraintPair& c, std::uint64_t seed) {
  return peel(g, all_nodes(g), c,
              {.rule = PeelRule::Random, .seed = seed, .record_profile = false})
      .best;
}

Solution degree_peel(const SimGraph& g, const ConstraintPair& c) {
  return peel(g, all_nodes(g), c, {.rule = PeelRule::MinDegree, .record_profile = false})
      .best;
}

Solution average_peel(const SimGraph& g, const ConstraintPair& c) {
  return peel(g, all_nodes(g), c, {.rule = PeelRule::MinAverage, .record_profile = false})
      .best;
}

}  // namespace msel
