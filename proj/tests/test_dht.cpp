#include <gtest/gtest.h>

#include "homdist/bottleneck.hpp"
#include "homdist/dht.hpp"
#include "random_instances.hpp"

using namespace homdist;

namespace {

ComplexPtr make(std::vector<Simplex> s) { return share(SimplicialComplex::from_simplices(s)); }

struct PointEdge {
  ComplexPtr point = make({{0}});
  ComplexPtr edge = make({{0, 1}});
  FilteredComplex x = lower_star(point, VertexFunction({0}));
  FilteredComplex y = lower_star(edge, VertexFunction({0, 1}));

  DhtCertificate certificate(double eps = 0) const {
    return {SimplicialMap(point, edge, {0}),
            SimplicialMap(edge, point, {0, 0}),
            eps,
            {SimplicialMap::identity(point)},
            {SimplicialMap::constant(edge, edge, 0), SimplicialMap::identity(edge)}};
  }
};

CertificateCondition violated(const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& c) {
  return check_certificate(x, y, c).violated;
}

// Point with f = 0 against a filled triangle; the chain on the triangle
// detours through vertex 1, which sits at height 5.
struct Detour {
  ComplexPtr point = make({{0}});
  ComplexPtr tri = make({{0, 1, 2}});
  FilteredComplex p = lower_star(point, VertexFunction({0}));
  FilteredComplex t = lower_star(tri, VertexFunction({0, 5, 0}));

  ContiguityChain detour() const {
    return {SimplicialMap::constant(tri, tri, 0), SimplicialMap::constant(tri, tri, 1), SimplicialMap::identity(tri)};
  }
};

}  // namespace

TEST(CheckCertificate, IdentityOnSharedComplex) {
  auto k = make({{0, 1}, {1, 2}});
  auto fc = lower_star(k, VertexFunction({0, 2, 1}));
  const DhtCertificate c{SimplicialMap::identity(k), SimplicialMap::identity(k), 0, {SimplicialMap::identity(k)},
                         {SimplicialMap::identity(k)}};
  EXPECT_TRUE(check_certificate(fc, fc, c).ok());
}

TEST(CheckCertificate, PointAgainstEdge) {
  PointEdge pe;
  EXPECT_TRUE(check_certificate(pe.x, pe.y, pe.certificate()).ok());
  EXPECT_EQ(minimal_eps(pe.x, pe.y, pe.certificate()), 0);
}

TEST(CheckCertificate, PointsAtDifferentHeights) {
  auto point = make({{0}});
  auto x = lower_star(point, VertexFunction({0}));
  auto y = lower_star(point, VertexFunction({1}));
  auto id = SimplicialMap::identity(point);
  const DhtCertificate c{id, id, 0.5, {id}, {id}};
  EXPECT_EQ(violated(x, y, c), CertificateCondition::kShiftPhi);
  EXPECT_EQ(minimal_eps(x, y, c), 1);
}

TEST(CheckCertificate, MonotoneInEps) {
  testutil::Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 6);
    auto k = testutil::random_connected_complex(rng, n, 2);
    auto x = lower_star(k, testutil::random_function(rng, n));
    auto y = lower_star(k, testutil::random_function(rng, n));
    auto c = identity_certificate(x, y);
    ASSERT_TRUE(check_certificate(x, y, c).ok());
    for (double extra : {0.25, 1.0, 10.0}) {
      auto looser = c;
      looser.eps = c.eps + extra;
      EXPECT_TRUE(check_certificate(x, y, looser).ok());
    }
  }
}

TEST(NegativeControls, NamedConditions) {
  PointEdge pe;
  Detour d;
  auto two = make({{0}, {1}});
  auto two_f = lower_star(two, VertexFunction({0, 0}));
  auto edge_f = lower_star(pe.edge, VertexFunction({0, 0}));
  auto hollow = make({{0, 1}, {1, 2}, {0, 2}});
  auto hollow_f = lower_star(hollow, VertexFunction({0, 0, 0}));
  int cases = 0;
  auto expect = [&](const FilteredComplex& x, const FilteredComplex& y, const DhtCertificate& c,
                    CertificateCondition want) {
    const auto check = check_certificate(x, y, c);
    EXPECT_EQ(check.violated, want) << condition_name(check.violated) << " vs " << condition_name(want);
    EXPECT_FALSE(check.detail.empty());
    ++cases;
  };

  auto c = pe.certificate();
  c.eps = -1;
  expect(pe.x, pe.y, c, CertificateCondition::kBadParameters);
  c = pe.certificate();
  c.factor = 0;
  expect(pe.x, pe.y, c, CertificateCondition::kBadParameters);

  // Wrong maps: the two endpoints of an edge sent to two separate points.
  expect(edge_f, two_f,
         {SimplicialMap(pe.edge, two, {0, 1}), SimplicialMap(two, pe.edge, {0, 1}), 0,
          {SimplicialMap::identity(pe.edge)}, {SimplicialMap::identity(two)}},
         CertificateCondition::kPhiNotSimplicial);
  expect(two_f, edge_f,
         {SimplicialMap(two, pe.edge, {0, 1}), SimplicialMap(pe.edge, two, {0, 1}), 0,
          {SimplicialMap::identity(two)}, {SimplicialMap::identity(pe.edge)}},
         CertificateCondition::kPsiNotSimplicial);

  // Broken chains: collapsing a hollow triangle is not one contiguity step.
  expect(hollow_f, d.p,
         {SimplicialMap(hollow, d.point, {0, 0, 0}), SimplicialMap(d.point, hollow, {0}), 0,
          {SimplicialMap::constant(hollow, hollow, 0), SimplicialMap::identity(hollow)},
          {SimplicialMap::identity(d.point)}},
         CertificateCondition::kChainXNotContiguous);
  expect(d.p, hollow_f,
         {SimplicialMap(d.point, hollow, {0}), SimplicialMap(hollow, d.point, {0, 0, 0}), 0,
          {SimplicialMap::identity(d.point)},
          {SimplicialMap::constant(hollow, hollow, 0), SimplicialMap::identity(hollow)}},
         CertificateCondition::kChainYNotContiguous);

  // Chains with the wrong endpoints.
  expect(pe.y, pe.x,
         {SimplicialMap(pe.edge, pe.point, {0, 0}), SimplicialMap(pe.point, pe.edge, {0}), 0,
          {SimplicialMap::identity(pe.edge)}, {SimplicialMap::identity(pe.point)}},
         CertificateCondition::kChainXEndpoints);
  c = pe.certificate();
  c.chain_y = {SimplicialMap::identity(pe.edge)};
  expect(pe.x, pe.y, c, CertificateCondition::kChainYEndpoints);
  c = pe.certificate();
  c.chain_y = {SimplicialMap::constant(pe.edge, pe.edge, 0), SimplicialMap::constant(pe.edge, pe.edge, 0)};
  expect(pe.x, pe.y, c, CertificateCondition::kChainYEndpoints);

  // Understated eps.
  auto point = make({{0}});
  auto id = SimplicialMap::identity(point);
  expect(lower_star(point, VertexFunction({0})), lower_star(point, VertexFunction({1})), {id, id, 0.5, {id}, {id}},
         CertificateCondition::kShiftPhi);
  expect(lower_star(point, VertexFunction({1})), lower_star(point, VertexFunction({0})), {id, id, 0.5, {id}, {id}},
         CertificateCondition::kShiftPsi);
  auto k = make({{0, 1}, {1, 2}});
  auto kid = SimplicialMap::identity(k);
  expect(lower_star(k, VertexFunction({0, 0, 0})), lower_star(k, VertexFunction({0, 0.5, 0})),
         {kid, kid, 0.25, {kid}, {kid}}, CertificateCondition::kShiftPhi);

  // Control: the chain sweeps through a vertex far above the function.
  expect(d.t, d.p,
         {SimplicialMap(d.tri, d.point, {0, 0, 0}), SimplicialMap(d.point, d.tri, {0}), 0, d.detour(),
          {SimplicialMap::identity(d.point)}},
         CertificateCondition::kControlX);
  expect(d.p, d.t,
         {SimplicialMap(d.point, d.tri, {0}), SimplicialMap(d.tri, d.point, {0, 0, 0}), 0,
          {SimplicialMap::identity(d.point)}, d.detour()},
         CertificateCondition::kControlY);

  EXPECT_GE(cases, 10);
}

TEST(NegativeControls, StructuralMismatchThrows) {
  PointEdge pe;
  auto c = pe.certificate();
  c.phi = SimplicialMap::identity(pe.point);
  EXPECT_THROW(check_certificate(pe.x, pe.y, c), InvalidInput);
  c = pe.certificate();
  c.chain_x.clear();
  EXPECT_THROW(check_certificate(pe.x, pe.y, c), InvalidInput);
}

TEST(ConditionName, AllDistinct) {
  EXPECT_EQ(condition_name(CertificateCondition::kControlY), "control_y");
  EXPECT_EQ(condition_name(CertificateCondition::kShiftPhi), "shift_phi");
  EXPECT_EQ(condition_name(CertificateCondition::kChainXNotContiguous), "chain_x_not_contiguous");
}

TEST(SearchCertificate, Examples) {
  auto k = make({{0, 1}, {1, 2}});
  auto fc = lower_star(k, VertexFunction({0, 2, 1}));
  EXPECT_EQ(search_certificate(fc, fc).eps_upper, 0);

  auto point = make({{0}});
  for (auto [a, b] : {std::pair{0.0, 1.0}, {2.5, -1.0}, {3.0, 3.0}}) {
    const auto r = search_certificate(lower_star(point, VertexFunction({a})), lower_star(point, VertexFunction({b})));
    EXPECT_EQ(r.eps_upper, std::abs(a - b));
  }

  PointEdge pe;
  const auto r = search_certificate(pe.x, pe.y);
  EXPECT_EQ(r.eps_upper, 0);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_TRUE(check_certificate(pe.x, pe.y, *r.certificate).ok());
}

TEST(SearchCertificate, ContractibleTriangle) {
  auto point = make({{0}});
  auto tri = make({{0, 1, 2}});
  const auto r = search_certificate(lower_star(point, VertexFunction({0})), lower_star(tri, VertexFunction({0, 1, 2})));
  EXPECT_EQ(r.eps_upper, 0);
}

TEST(SearchCertificate, NoSimplicialCertificateBetweenCycles) {
  auto c3 = make({{0, 1}, {1, 2}, {0, 2}});
  auto c4 = make({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto r = search_certificate(lower_star(c3, VertexFunction({0, 0, 0})),
                                    lower_star(c4, VertexFunction({0, 0, 0, 0})));
  EXPECT_EQ(r.eps_upper, kInfinity);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(SearchCertificate, VertexLimit) {
  std::vector<Simplex> s;
  for (int v = 0; v < kSearchVertexLimit; ++v) s.push_back({v, v + 1});
  auto big = lower_star(make(s), VertexFunction(std::vector<double>(kSearchVertexLimit + 1, 0.0)));
  EXPECT_THROW(search_certificate(big, big), InvalidInput);
}

TEST(SearchCertificate, BoundedByLinfOnSharedDomain) {
  testutil::Rng rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 4);
    auto k = testutil::random_connected_complex(rng, n, 2);
    const auto f = testutil::random_function(rng, n);
    const auto g = testutil::random_function(rng, n);
    const auto r = search_certificate(lower_star(k, f), lower_star(k, g));
    EXPECT_LE(r.eps_upper, linf_distance(f, g));
    EXPECT_EQ(search_certificate(lower_star(k, f), lower_star(k, f)).eps_upper, 0);
  }
}

TEST(SearchCertificate, SoundOnRandomPairs) {
  testutil::Rng rng(71);
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 4);
    const int m = testutil::uniform_int(rng, 1, 4);
    auto x = lower_star(testutil::random_connected_complex(rng, n, 2), testutil::random_function(rng, n, 2));
    auto y = lower_star(testutil::random_connected_complex(rng, m, 2), testutil::random_function(rng, m, 2));
    const auto r = search_certificate(x, y);
    if (!r.certificate) continue;
    ++certified;
    ASSERT_TRUE(check_certificate(x, y, *r.certificate).ok());
    const auto dx = compute_diagrams(x, 2), dy = compute_diagrams(y, 2);
    for (int deg = 0; deg <= 2; ++deg) {
      EXPECT_LE(bottleneck_distance(dx[deg], dy[deg]).distance, r.eps_upper + 1e-9) << "trial " << trial;
    }
  }
  EXPECT_GT(certified, 20);
}

TEST(IdentityCertificate, EpsIsLinf) {
  auto k = make({{0, 1, 2}});
  auto x = lower_star(k, VertexFunction({0, 1, 2}));
  auto y = lower_star(k, VertexFunction({0.5, 1, 0}));
  EXPECT_EQ(identity_certificate(x, y).eps, 2);
  EXPECT_THROW(identity_certificate(x, lower_star(make({{0}}), VertexFunction({0}))), InvalidInput);
}

TEST(VerifyStability, Examples) {
  auto k = make({{0, 1}, {1, 2}});
  auto fc = lower_star(k, VertexFunction({0, 2, 1}));
  const auto same = verify_stability(fc, fc, identity_certificate(fc, fc), 2);
  ASSERT_EQ(same.degrees.size(), 3u);
  for (const auto& d : same.degrees) {
    EXPECT_EQ(d.slack, 0);
    EXPECT_TRUE(d.holds);
  }
  EXPECT_FALSE(same.falsified);

  PointEdge pe;
  const auto r = verify_stability(pe.x, pe.y, pe.certificate(), 1);
  EXPECT_EQ(r.degrees[0].bottleneck, 0);
  EXPECT_EQ(r.degrees[1].bottleneck, 0);
  EXPECT_FALSE(r.falsified);
}

TEST(VerifyStability, RejectsInvalidCertificate) {
  PointEdge pe;
  auto c = pe.certificate();
  c.chain_y = {SimplicialMap::identity(pe.edge)};
  EXPECT_THROW(verify_stability(pe.x, pe.y, c, 1), InvalidInput);
}

TEST(VerifyStability, ReproducesClassicalStability) {
  testutil::Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 15);
    auto k = testutil::random_connected_complex(rng, n, 2);
    const auto f = testutil::random_function(rng, n);
    const auto g = testutil::random_function(rng, n);
    auto x = lower_star(k, f), y = lower_star(k, g);
    const auto c = identity_certificate(x, y);
    EXPECT_EQ(c.eps, linf_distance(f, g));
    EXPECT_FALSE(verify_stability(x, y, c, 2).falsified);
  }
}

TEST(Probe, ZeroDelta) {
  PointEdge pe;
  const auto r = upshift_asymmetry_probe(pe.x, pe.y, pe.certificate(), 0);
  EXPECT_TRUE(r.up_shift.ok());
  EXPECT_TRUE(r.down_shift.ok());
}

TEST(Probe, PointsAtZero) {
  auto point = make({{0}});
  auto fc = lower_star(point, VertexFunction({0}));
  const auto r = upshift_asymmetry_probe(fc, fc, identity_certificate(fc, fc), 1);
  EXPECT_TRUE(r.up_shift.ok());
  EXPECT_EQ(r.down_shift.violated, CertificateCondition::kShiftPsi);
}

TEST(Probe, RejectsNegativeDelta) {
  PointEdge pe;
  EXPECT_THROW(upshift_asymmetry_probe(pe.x, pe.y, pe.certificate(), -0.5), InvalidInput);
}

TEST(Probe, UpShiftAlwaysRecertifies) {
  testutil::Rng rng(79);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = testutil::uniform_int(rng, 1, 8);
    auto k = testutil::random_connected_complex(rng, n, 2);
    auto x = lower_star(k, testutil::random_function(rng, n));
    auto y = lower_star(k, testutil::random_function(rng, n));
    const auto c = identity_certificate(x, y);
    for (double delta : {0.25, 1.0}) EXPECT_TRUE(upshift_asymmetry_probe(x, y, c, delta).up_shift.ok());
  }
}
