#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "msel/error.hpp"
#include "msel/similarity.hpp"

using namespace msel;
using namespace msel::testing;

TEST_CASE("normalize_attributes") {
  AttributeMatrix binary(2, 2, {0, 1, 1, 0});
  CHECK(normalize_attributes(binary).values() == binary.values());

  AttributeMatrix col(3, 1, {2, 4, 6});
  CHECK(normalize_attributes(col).values() == std::vector<double>{0.0, 0.5, 1.0});

  AttributeMatrix constant(3, 1, {3, 3, 3});
  CHECK(normalize_attributes(constant).values() == std::vector<double>{0, 0, 0});

  AttributeMatrix bad(1, 2, {1.0, NAN});
  CHECK_THROWS_AS(normalize_attributes(bad), Error);
  CHECK_THROWS_AS(AttributeMatrix(2, 2, {1, 2, 3}), Error);
}

TEST_CASE("pair_weight") {
  std::vector<double> x{0.3, 0.7, 0.1};
  CHECK(pair_weight(x, x) == 1.0);
  std::vector<double> a{1, 1, 0, 0}, b{0, 0, 1, 1};
  CHECK(pair_weight(a, b) == 0.0);
  std::vector<double> c{1, 0}, d{1, 1};
  CHECK(close(pair_weight(c, d), std::sqrt(0.5)));
  CHECK(close(pair_weight(c, d), 0.707107, 1e-6));
  std::vector<double> e{1};
  CHECK_THROWS_AS(pair_weight(c, e), Error);
}

TEST_CASE("property: pair_weight symmetric, bounded and monotone") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + rng() % 8;
    std::vector<double> x(d), y(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = unit(rng), y[i] = unit(rng);
    const double w = pair_weight(x, y);
    CHECK(w == pair_weight(y, x));
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    std::vector<double> agree = y;
    const std::size_t j = rng() % d;
    agree[j] = x[j];
    CHECK(pair_weight(x, agree) >= w);
  }
}

TEST_CASE("BuildMode parsing") {
  CHECK(BuildMode::parse("edges").kind == BuildMode::Kind::Edges);
  CHECK(BuildMode::parse("full").kind == BuildMode::Kind::Full);
  auto knn = BuildMode::parse("knn:4");
  CHECK(knn.kind == BuildMode::Kind::Knn);
  CHECK(knn.k == 4);
  CHECK(knn.to_string() == "knn:4");
  CHECK_THROWS_AS(BuildMode::parse("knn:"), Error);
  CHECK_THROWS_AS(BuildMode::parse("knn:0"), Error);
  CHECK_THROWS_AS(BuildMode::parse("cosine"), Error);
}

TEST_CASE("build_similarity_graph, edges mode") {
  AttributeMatrix same(2, 3, {1, 0, 1, 1, 0, 1});
  std::vector<std::pair<NodeId, NodeId>> one{{0, 1}};
  SimGraph g = build_similarity_graph(same, one, {});
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(0, 1) == 1.0);

  AttributeMatrix disjoint(2, 2, {1, 0, 0, 1});
  SimGraph dropped = build_similarity_graph(disjoint, one, {});
  CHECK(dropped.edge_count() == 0);

  // duplicates, reversed pairs and self pairs collapse
  AttributeMatrix three(3, 1, {0.0, 0.5, 1.0});
  std::vector<std::pair<NodeId, NodeId>> messy{{0, 1}, {1, 0}, {2, 2}, {1, 2}};
  SimGraph m = build_similarity_graph(three, messy, {});
  CHECK(m.edge_count() == 2);
  CHECK(m.edge_count() <= messy.size());

  std::vector<std::pair<NodeId, NodeId>> out_of_range{{0, 7}};
  CHECK_THROWS_AS(build_similarity_graph(three, out_of_range, {}), Error);
  AttributeMatrix raw(2, 1, {0.0, 3.0});
  CHECK_THROWS_AS(build_similarity_graph(raw, one, {}), Error);
}

TEST_CASE("build_similarity_graph, full and knn modes") {
  // rows chosen so pair weights are sqrt(1/2), 1, sqrt(1/2)
  AttributeMatrix x(3, 2, {1, 0, 1, 1, 1, 0});
  SimGraph full = build_similarity_graph(x, {}, BuildMode::parse("full"));
  CHECK(full.edge_count() == 3);
  CHECK(close(full.weight(0, 1), std::sqrt(0.5)));
  CHECK(full.weight(0, 2) == 1.0);
  CHECK(close(full.weight(1, 2), std::sqrt(0.5)));

  SimGraph knn = build_similarity_graph(x, {}, BuildMode::parse("knn:1"));
  // 0 and 2 pick each other; 1 picks 0 (tie with 2, smaller id wins)
  CHECK(knn.edge_count() == 2);
  CHECK(knn.weight(0, 2) == 1.0);
  CHECK(knn.weight(0, 1) > 0.0);
  CHECK(knn.weight(1, 2) == 0.0);

  CHECK_THROWS_AS(build_similarity_graph(x, {}, BuildMode::parse("knn:3")), Error);

  AttributeMatrix big(kFullModeNodeLimit + 1, 1, std::vector<double>(kFullModeNodeLimit + 1, 0.5));
  try {
    build_similarity_graph(big, {}, BuildMode::parse("full"));
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
}
