#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "msel/error.hpp"
#include "msel/oracle.hpp"
#include "msel/peel.hpp"

using namespace msel;
using namespace msel::testing;

TEST_CASE("modified_sgsel on a uniform clique keeps every node") {
  for (std::size_t n = 2; n <= 6; ++n) {
    SimGraph g = clique(n, 0.4);
    ConstraintPair c{0.2, 1};
    PeelResult r = modified_sgsel(g, c);
    CHECK(r.best.size() == n);
    CHECK(close(r.best.alpha, 0.4 * static_cast<double>(n - 1) / 2.0));
    OracleResult opt = exact_msp(g, c);
    CHECK(close(opt.opt_alpha, r.best.alpha));
  }
}

TEST_CASE("modified_sgsel picks the heavy triangle") {
  SimGraph g = two_triangles();
  ConstraintPair c{0.05, 2};
  PeelResult r = modified_sgsel(g, c);
  CHECK(r.best.members == NodeSet{0, 1, 2});
  CHECK(close(r.best.alpha, 0.9));
  CHECK(close(exact_msp(g, c).opt_alpha, 0.9));
}

TEST_CASE("modified_sgsel returns empty when every edge is too weak") {
  SimGraph g = two_triangles();
  for (std::size_t p : {0, 1, 3}) {
    PeelResult r = modified_sgsel(g, {0.95, p});
    CHECK(r.best.empty());
    CHECK(r.prefiltered == 6);
  }
  CHECK_THROWS_AS(modified_sgsel(SimGraph(0, {}), {0.5, 0}), Error);
}

TEST_CASE("argmin_incident") {
  SimGraph g = star(4, 0.3);
  NodeSet all = all_nodes(g);
  std::vector<double> inc;
  for (NodeId u : all) inc.push_back(incident_weight(u, all, g));
  CHECK(argmin_incident(all, inc) == 1);

  std::vector<NodeId> ids{3, 7, 9};
  std::vector<double> equal{0.5, 0.5, 0.5};
  CHECK(argmin_incident(ids, equal) == 3);
  std::vector<double> mixed{0.7, 0.5, 0.6};
  CHECK(argmin_incident(ids, mixed) == 7);
  CHECK_THROWS_AS(argmin_incident({}, {}), Error);
}

TEST_CASE("Peeler removes in ascending incident order with id ties") {
  SimGraph g = walkthrough_graph();
  NodeSet scope{0, 2, 4, 5};
  Peeler peeler(g, scope, 0.1);
  CHECK(peeler.prefilter() == 0);
  CHECK(close(peeler.alpha(), 0.525));
  auto first = peeler.step();
  REQUIRE(first);
  CHECK(first->node == 0);
  CHECK(close(first->incident, 0.8));
  CHECK(close(peeler.incident(2), 0.7));
  auto second = peeler.step();
  REQUIRE(second);
  CHECK(second->node == 2);
  CHECK(close(peeler.total_weight(), 0.6));
}

TEST_CASE("Peeler prefilter cascades") {
  // 0-1 strong, 1-2 weak, 2-3 weak: 2 and 3 have no strong edge
  std::vector<WeightedEdge> edges{{0, 1, 0.9}, {1, 2, 0.2}, {2, 3, 0.3}};
  SimGraph g(4, edges);
  NodeSet all = all_nodes(g);
  Peeler p(g, all, 0.5);
  CHECK(p.prefilter() == 2);
  CHECK(p.members() == NodeSet{0, 1});
  CHECK(p.cohesive());

  // removing 1 strands 2 whose only strong edge went to 1
  std::vector<WeightedEdge> chain{{0, 1, 0.2}, {1, 2, 0.9}};
  SimGraph h(3, chain);
  NodeSet scope{0, 2};
  Peeler q(h, scope, 0.5);
  CHECK(q.prefilter() == 2);
  CHECK(q.live_count() == 0);
}

TEST_CASE("property: incremental incident weights match recomputation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 5 + rng() % 20;
    SimGraph g = random_graph(n, 0.3, 0.05, 1.0, rng);
    auto w = weight_matrix(g);
    NodeSet all = all_nodes(g);
    Peeler p(g, all, 0.05 + 0.01 * static_cast<double>(rng() % 40));
    p.prefilter();
    const std::size_t steps = rng() % (p.live_count() + 1);
    for (std::size_t i = 0; i < steps; ++i) p.step();
    NodeSet live = p.members();
    for (NodeId u : live) CHECK(close(p.incident(u), brute_incident(w, u, live)));
    CHECK(close(p.total_weight(), brute_weight(w, live)));
  }
}

TEST_CASE("property: W telescopes over removals") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    SimGraph g = random_graph(15, 0.4, 0.05, 1.0, rng);
    NodeSet all = all_nodes(g);
    Peeler p(g, all, 0.2);
    p.prefilter();
    const double start = total_weight(p.members(), g);
    double removed = 0.0;
    while (auto r = p.step()) {
      removed += r->incident;
      CHECK(close(p.total_weight(), start - removed, 1e-9));
    }
    CHECK(p.live_count() == 0);
  }
}

TEST_CASE("property: best solution dominates feasible profile entries") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    SimGraph g = random_graph(14, 0.4, 0.05, 1.0, rng);
    ConstraintPair c{0.3, rng() % 5};
    PeelResult r = modified_sgsel(g, c);
    for (const auto& [k, entry] : r.profile.entries()) {
      NodeSet members = r.profile.members(k);
      CHECK(members.size() == k);
      CHECK(close(avg_similarity(members, g), entry.alpha));
      CHECK(entry.alpha >= 0.0);
      if (k > c.p && is_cohesive(members, g, c.s)) CHECK(r.best.alpha >= entry.alpha - 1e-12);
    }
    CHECK(r.profile.best_alpha(1000) == -1.0);
    CHECK(r.profile.members(1000).empty());
    if (!r.best.empty()) CHECK(is_feasible(r.best.members, g, c));
  }
}

TEST_CASE("property: empirical one-third ratio against the oracle") {
  std::mt19937_64 rng(24);
  int instances = 0;
  double worst = 1.0;
  while (instances < 250) {
    const std::size_t n = 4 + rng() % 9;
    SimGraph g = random_graph(n, 0.2 + 0.6 * (rng() % 100) / 100.0, 0.05, 1.0, rng);
    ConstraintPair c{0.05 + 0.5 * (rng() % 100) / 100.0, rng() % 4};
    OracleResult opt = exact_msp(g, c);
    if (!opt.feasible) continue;
    ++instances;
    PeelResult r = modified_sgsel(g, c);
    const double ratio = ratio_check(opt, r.best);
    worst = std::min(worst, ratio);
    CHECK(ratio >= 1.0 / 3.0 - 1e-9);
    CHECK(ratio <= 1.0 + 1e-9);
  }
  MESSAGE("worst ratio " << worst);
}

TEST_CASE("property: priority operations stay linear in n + m") {
  std::mt19937_64 rng(25);
  for (std::size_t n : {100, 1000, 5000}) {
    SimGraph g = random_sparse_graph(n, 4 * n, 0.05, 1.0, rng);
    PeelResult r = modified_sgsel(g, {0.1, 1});
    const auto m = g.edge_count();
    CHECK(r.counters.pushes <= n + 2 * m);
    CHECK(r.counters.pops <= r.counters.pushes);
    CHECK(r.counters.removals <= n);
  }
}

TEST_CASE("anchored peel reports combined objective") {
  SimGraph g = two_clusters();
  NodeSet anchor{0, 1, 2};
  NodeSet rest = complement(g, anchor);
  CHECK(rest == NodeSet{3, 4, 5, 6, 7});
  PeelOptions opts;
  opts.anchor = anchor;
  PeelResult r = peel(g, rest, {0.1, 2}, opts);
  // every recorded size counts the anchor
  for (const auto& [k, entry] : r.profile.entries()) {
    CHECK(k > anchor.size());
    NodeSet members = r.profile.members(k);
    CHECK(std::includes(members.begin(), members.end(), anchor.begin(), anchor.end()));
    CHECK(close(avg_similarity(members, g), entry.alpha));
  }
}
