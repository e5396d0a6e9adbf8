#include <gtest/gtest.h>

#include <set>

#include "homdist/bottleneck.hpp"
#include "random_instances.hpp"

using namespace homdist;

namespace {

ComplexPtr make(std::vector<Simplex> s) { return share(SimplicialComplex::from_simplices(s)); }

PersistenceDiagram diagram(std::vector<DiagramPoint> points) { return {0, std::move(points)}; }

// Every point appears exactly once and the stated cost is the true maximum.
void expect_valid_matching(const PersistenceDiagram& a, const PersistenceDiagram& b, const BottleneckResult& r) {
  std::multiset<int> left, right;
  double worst = 0;
  for (auto [i, j] : r.matching.pairs) {
    ASSERT_FALSE(i == kDiagonal && j == kDiagonal);
    if (i != kDiagonal) left.insert(i);
    if (j != kDiagonal) right.insert(j);
    double c = 0;
    if (i == kDiagonal) {
      c = diagonal_cost(b.points[static_cast<std::size_t>(j)]);
    } else if (j == kDiagonal) {
      c = diagonal_cost(a.points[static_cast<std::size_t>(i)]);
    } else {
      c = point_cost(a.points[static_cast<std::size_t>(i)], b.points[static_cast<std::size_t>(j)]);
    }
    worst = std::max(worst, c);
  }
  ASSERT_EQ(left.size(), a.points.size());
  ASSERT_EQ(right.size(), b.points.size());
  for (int i = 0; i < static_cast<int>(a.points.size()); ++i) EXPECT_EQ(left.count(i), 1u);
  for (int j = 0; j < static_cast<int>(b.points.size()); ++j) EXPECT_EQ(right.count(j), 1u);
  EXPECT_EQ(worst, r.distance);
  EXPECT_EQ(r.matching.cost, r.distance);
}

}  // namespace

TEST(Bottleneck, Examples) {
  EXPECT_EQ(bottleneck_distance(diagram({{1, 3}}), diagram({})).distance, 1.0);
  EXPECT_EQ(bottleneck_distance(diagram({{0, 4}}), diagram({{1, 5}})).distance, 1.0);
  EXPECT_EQ(bottleneck_distance(diagram({{0, 2}}), diagram({{0, 2}, {5, 6}})).distance, 0.5);
  EXPECT_EQ(bottleneck_distance(diagram({{0, kInfinity}}), diagram({})).distance, kInfinity);
  EXPECT_EQ(bottleneck_distance(diagram({}), diagram({})).distance, 0.0);
}

TEST(Bottleneck, EssentialPointsMatchedByBirth) {
  EXPECT_EQ(bottleneck_distance(diagram({{0, kInfinity}, {3, kInfinity}}), diagram({{1, kInfinity}, {2, kInfinity}})).distance,
            1.0);
  EXPECT_EQ(bottleneck_distance(diagram({{0, kInfinity}}), diagram({{0, kInfinity}, {1, kInfinity}})).distance, kInfinity);
}

TEST(Bottleneck, RejectsDegreeMismatch) {
  PersistenceDiagram a{0, {}}, b{1, {}};
  EXPECT_THROW(bottleneck_distance(a, b), InvalidInput);
}

TEST(BottleneckBruteforce, Examples) {
  EXPECT_EQ(bottleneck_bruteforce(diagram({}), diagram({})), 0.0);
  EXPECT_EQ(bottleneck_bruteforce(diagram({{0, 2}}), diagram({{0, 2}, {5, 6}})), 0.5);
  EXPECT_EQ(bottleneck_bruteforce(diagram({{0, kInfinity}}), diagram({})), kInfinity);
  EXPECT_EQ(bottleneck_bruteforce(diagram({{1, 3}}), diagram({})), 1.0);
  EXPECT_EQ(bottleneck_bruteforce(diagram({{0, 4}}), diagram({{1, 5}})), 1.0);
}

TEST(BottleneckBruteforce, SizeGuard) {
  std::vector<DiagramPoint> nine(9, DiagramPoint{0, 1});
  EXPECT_THROW(bottleneck_bruteforce(diagram(nine), diagram({})), InvalidInput);
}

TEST(Bottleneck, MatchesBruteforce) {
  testutil::Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testutil::random_diagram(rng, 6);
    const auto b = testutil::random_diagram(rng, 6);
    const auto r = bottleneck_distance(a, b);
    EXPECT_EQ(r.distance, bottleneck_bruteforce(a, b)) << "trial " << trial;
    if (r.distance != kInfinity) expect_valid_matching(a, b, r);
  }
}

TEST(Bottleneck, MetricAxioms) {
  testutil::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testutil::random_diagram(rng, 10, false);
    const auto b = testutil::random_diagram(rng, 10, false);
    const auto c = testutil::random_diagram(rng, 10, false);
    const double ab = bottleneck_distance(a, b).distance;
    EXPECT_EQ(bottleneck_distance(a, a).distance, 0.0);
    EXPECT_EQ(ab, bottleneck_distance(b, a).distance);
    EXPECT_LE(bottleneck_distance(a, c).distance, ab + bottleneck_distance(b, c).distance + 1e-9);
  }
}

TEST(Bottleneck, ClassicalStability) {
  testutil::Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 20);
    auto k = testutil::random_connected_complex(rng, n, 2);
    const auto f = testutil::random_function(rng, n);
    const auto g = testutil::random_function(rng, n);
    const double linf = linf_distance(f, g);
    const auto df = compute_diagrams(lower_star(k, f), 2);
    const auto dg = compute_diagrams(lower_star(k, g), 2);
    for (int deg = 0; deg <= 2; ++deg) EXPECT_LE(bottleneck_distance(df[deg], dg[deg]).distance, linf + 1e-9);
  }
}

TEST(Linf, Examples) {
  EXPECT_EQ(linf_distance(VertexFunction({1, 2}), VertexFunction({1, 2})), 0.0);
  EXPECT_EQ(linf_distance(VertexFunction({0, 2, 1}), VertexFunction({1, 1, 1})), 1.0);
  EXPECT_EQ(linf_distance(VertexFunction({0, 0}), VertexFunction({0, -3})), 3.0);
  EXPECT_THROW(linf_distance(VertexFunction({0}), VertexFunction({0, 1})), InvalidInput);
}

TEST(NaturalPseudoUpper, Examples) {
  auto two = make({{0}, {1}});
  auto point = make({{0}});
  auto path = make({{0, 1}, {1, 2}});
  const VertexFunction f({0, 2, 1});
  EXPECT_EQ(natural_pseudo_upper(*path, f, *path, f), 0.0);
  EXPECT_EQ(natural_pseudo_upper(*two, VertexFunction({0, 5}), *two, VertexFunction({5, 0})), 0.0);
  EXPECT_EQ(natural_pseudo_upper(*point, VertexFunction({0}), *two, VertexFunction({0, 0})), kInfinity);
  // The path's only nontrivial automorphism swaps the ends.
  EXPECT_EQ(natural_pseudo_upper(*path, VertexFunction({0, 2, 1}), *path, VertexFunction({1, 2, 0})), 0.0);
}

TEST(NaturalPseudoUpper, IsomorphismCounts) {
  auto cycle = make({{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(simplicial_isomorphisms(*cycle, *cycle).size(), 6u);
  auto path = make({{0, 1}, {1, 2}});
  EXPECT_EQ(simplicial_isomorphisms(*path, *path).size(), 2u);
  EXPECT_TRUE(simplicial_isomorphisms(*path, *cycle).empty());
}

TEST(NaturalPseudoUpper, SizeGuard) {
  std::vector<Simplex> s;
  for (int v = 0; v < 9; ++v) s.push_back({v, v + 1});
  auto big = make(s);
  const VertexFunction f(std::vector<double>(10, 0.0));
  EXPECT_THROW(natural_pseudo_upper(*big, f, *big, f), InvalidInput);
}

TEST(NaturalPseudoUpper, SandwichedOnSameDomain) {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 7);
    auto k = testutil::random_connected_complex(rng, n, 2);
    const auto f = testutil::random_function(rng, n);
    const auto g = testutil::random_function(rng, n);
    const double np = natural_pseudo_upper(*k, f, *k, g);
    EXPECT_LE(np, linf_distance(f, g));
    const auto df = compute_diagrams(lower_star(k, f), 2);
    const auto dg = compute_diagrams(lower_star(k, g), 2);
    for (int deg = 0; deg <= 2; ++deg) EXPECT_LE(bottleneck_distance(df[deg], dg[deg]).distance, np + 1e-9);
  }
}
