#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

#include <isoflow/collapse.hpp>
#include <isoflow/errors.hpp>

using namespace isoflow;

TEST(Collapse, EuclideanSphereToPoint) {
  const auto s = make_euclidean_cylinder(2, 2, 1.0);
  const auto r = analyze(s, resolve_profile(s));
  EXPECT_DOUBLE_EQ(r.t_star, 0.25);
  EXPECT_EQ(r.limit_kind, LimitKind::Point);
  EXPECT_EQ(r.focal_dimension, 0);
  EXPECT_EQ(r.degenerate_block, 0u);
  EXPECT_EQ(r.engine, "closed");
}

TEST(Collapse, CylinderToLine) {
  const auto s = make_euclidean_cylinder(1, 2, 1.0);
  const auto r = analyze(s, resolve_profile(s));
  EXPECT_EQ(r.limit_kind, LimitKind::FocalSubmanifold);
  EXPECT_EQ(r.focal_dimension, 1);
  EXPECT_EQ(r.degenerate_block, 0u);
  EXPECT_DOUBLE_EQ(r.t_star, 0.5);
}

TEST(Collapse, SphereProductFocal) {
  const auto s = make_sphere_product(1, 2, 2.0);
  const auto r = analyze(s, resolve_profile(s));
  EXPECT_EQ(r.focal_dimension, 1);
  EXPECT_EQ(r.focal_dimension, focal_dimension_expected(s));
  EXPECT_LE(*r.focal_residual_limit, 1e-12);
  EXPECT_GT(r.metric_factors[1], 0.1);
  EXPECT_LT(r.metric_factors[0], 1e-6);
}

TEST(Collapse, FlippedSurfaceReportsCallerBlock) {
  const auto s = make_hyperbolic_cylinder(1, 2, 2.0).flipped();
  const auto r = analyze(s, resolve_profile(s));
  EXPECT_TRUE(r.flipped);
  ASSERT_TRUE(r.degenerate_block);
  EXPECT_LT(s.blocks()[*r.degenerate_block].kappa, -1.0);
  EXPECT_EQ(r.focal_dimension, 2);
}

TEST(Collapse, EnginesAgree) {
  const std::array<int, 2> m{1, 2};
  for (const auto& s : {sphere_from_kappa1(4, 3.0, m), make_sphere_umbilic(3, 0.4), make_hyperbolic_umbilic(2, 1.5)}) {
    const auto closed = analyze(s, resolve_profile(s));
    const auto ode = analyze(s, integrate(s, 2.0 * closed.t_star));
    EXPECT_EQ(ode.engine, "ode");
    EXPECT_NEAR(ode.t_star, closed.t_star, 1e-9);
    EXPECT_EQ(ode.focal_dimension, closed.focal_dimension);
    EXPECT_EQ(ode.limit_kind, closed.limit_kind);
  }
}

TEST(Collapse, EternalFlows) {
  const auto h = make_horosphere(2, 1.0);
  const auto rh = analyze(h, resolve_profile(h));
  EXPECT_TRUE(std::isinf(rh.t_star));
  EXPECT_EQ(rh.limit_kind, LimitKind::Eternal);
  EXPECT_FALSE(rh.focal_dimension);

  const auto e = make_hyperbolic_umbilic(2, 0.5);
  const auto re = analyze(e, resolve_profile(e));
  EXPECT_EQ(re.limit_kind, LimitKind::TotallyGeodesic);
  const auto ro = analyze(e, integrate(e, 60.0));
  EXPECT_EQ(ro.limit_kind, LimitKind::TotallyGeodesic);
}

TEST(Collapse, ShortOdeRunIsIncomplete) {
  const auto s = make_hyperbolic_umbilic(2, 0.5);
  EXPECT_THROW((void)analyze(s, integrate(s, 1.0)), AnalysisIncomplete);
}

TEST(Collapse, ExpectedDimensions) {
  const std::array<int, 1> m2{2};
  const std::array<int, 2> m12{1, 2};
  EXPECT_EQ(focal_dimension_expected(sphere_from_kappa1(3, 3.0, m2)), 4);
  EXPECT_EQ(focal_dimension_expected(sphere_from_kappa1(6, 4.0, m2)), 10);
  // H < 0 here, so the kappa = -2 block (multiplicity 2) collapses: 2 + 2 * 1.
  EXPECT_EQ(focal_dimension_expected(sphere_from_kappa1(4, 3.0, m12)), 4);
  EXPECT_FALSE(focal_dimension_expected(make_hyperbolic_umbilic(2, 0.5)));
  EXPECT_EQ(focal_dimension_expected(make_hyperbolic_umbilic(2, 2.0)), 0);
}

TEST(Collapse, LimitEpsilon) {
  EXPECT_EQ(limit_epsilon(0.25), 1e-8);
  EXPECT_EQ(limit_epsilon(100.0), 1e-6);
}

TEST(Collapse, Json) {
  const auto s = make_horosphere(2, 1.0);
  const nlohmann::json j = analyze(s, resolve_profile(s));
  EXPECT_TRUE(j.at("t_star").is_null());
  EXPECT_EQ(j.at("limit_kind"), "eternal");
  EXPECT_EQ(j.at("family"), "horosphere");
}
