#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include <isoflow/closed_form.hpp>
#include <isoflow/errors.hpp>
#include <isoflow/flow_ode.hpp>

#include "oracles.hpp"

using namespace isoflow;

namespace {

oracle::Blocks blocks_of(const IsoparametricSurface& s) {
  oracle::Blocks out;
  for (const auto& b : s.blocks()) out.emplace_back(b.kappa, b.mult);
  return out;
}

}  // namespace

TEST(ClosedForm, Euclidean) {
  const auto p = profile_euclidean(make_euclidean_cylinder(2, 2, 1.0));
  EXPECT_EQ(p.xi(0.0), 0.0);
  EXPECT_DOUBLE_EQ(p.t_star(), 0.25);
  const auto q = profile_euclidean(make_euclidean_cylinder(1, 3, 2.0));
  EXPECT_DOUBLE_EQ(q.t_star(), 0.125);
  EXPECT_NEAR(q.xi(0.1), (1.0 - std::sqrt(0.2)) / 2.0, 1e-15);
  EXPECT_THROW((void)q.xi(0.2), InvalidInput);
  EXPECT_NEAR(q.xi(q.t_star()), 0.5, 1e-15);
}

TEST(ClosedForm, Horosphere) {
  const auto p = profile_horosphere(make_horosphere(3, 1.0));
  EXPECT_EQ(p.xi(2.0), 6.0);
  EXPECT_EQ(p.xi(0.0), 0.0);
  EXPECT_TRUE(std::isinf(p.t_star()));
  EXPECT_EQ(profile_horosphere(make_horosphere(2, -1.0)).xi(1.5), -3.0);
}

TEST(ClosedForm, HyperbolicUmbilic) {
  const auto p = profile_hyperbolic_umbilic(make_hyperbolic_umbilic(2, 2.0));
  EXPECT_DOUBLE_EQ(p.t_star(), 0.25 * std::log(4.0 / 3.0));
  EXPECT_EQ(*p.q(0.0), 1.0);
  const auto g = profile_hyperbolic_umbilic(make_hyperbolic_umbilic(2, 0.5));
  EXPECT_TRUE(std::isinf(g.t_star()));
  for (double t : {1.0, 5.0, 20.0}) {
    const double k_hat = 0.5 * std::exp(-2.0 * t) / std::sqrt(*g.q(t));
    EXPECT_NEAR(parallel_curvature(SpaceForm::hyperbolic(), 0.5, g.xi(t)), k_hat, 1e-12);
  }
}

TEST(ClosedForm, HyperbolicCylinder) {
  const auto p = profile_hyperbolic_cylinder(make_hyperbolic_cylinder(1, 1, 2.0));
  EXPECT_DOUBLE_EQ(*p.parameter("a"), 2.5);
  EXPECT_EQ(*p.parameter("b"), 0.0);
  EXPECT_NEAR(*p.q(0.0), 4.0, 1e-15);
  EXPECT_NEAR(p.t_star(), 0.25 * std::log(5.0 / 3.0), 1e-15);
  EXPECT_NEAR(p.xi(0.0), 0.0, 1e-15);
}

TEST(ClosedForm, SphereUmbilic) {
  const auto p = profile_sphere_umbilic(make_sphere_umbilic(2, 1.0));
  EXPECT_NEAR(p.t_star(), 0.25 * std::log(2.0), 1e-15);
  EXPECT_EQ(p.xi(0.0), 0.0);
  const auto ode = integrate(make_sphere_umbilic(2, 1.0), 0.1);
  EXPECT_NEAR(p.xi(0.1), ode.xi(0.1), 1e-8);
}

TEST(ClosedForm, SphereProduct) {
  const auto p = profile_sphere_g2(make_sphere_product(1, 2, 2.0));
  EXPECT_DOUBLE_EQ(*p.parameter("a"), 1.5);
  EXPECT_EQ(*p.parameter("b"), 0.0);
  EXPECT_NEAR(*p.q(0.3 * p.t_star()), 1.5 * std::exp(4.0 * 0.3 * p.t_star()), 1e-14);
  EXPECT_NEAR(p.t_star(), 0.25 * std::log(5.0 / 3.0), 1e-15);
  EXPECT_LE(p.pair(0.0)->identity_residual(), 1e-15);
}

TEST(ClosedForm, SphereG3) {
  const std::array<int, 1> m1{1};
  const auto p = profile_sphere_g3(sphere_from_kappa1(3, 2.0, m1));
  EXPECT_NEAR(*p.parameter("a"), 6.0 / 11.0, 1e-15);
  EXPECT_EQ(p.xi(0.0), 0.0);
  EXPECT_NEAR(p.t_star(), std::log(1.0 + 1089.0 / 36.0) / 18.0, 1e-14);
  const auto minimal = profile_sphere_g3(make_minimal(SpaceForm::sphere(), {{std::sqrt(3.0), 1}, {0.0, 1}, {-std::sqrt(3.0), 1}}));
  EXPECT_TRUE(minimal.stationary());
}

TEST(ClosedForm, SphereG4) {
  const std::array<int, 2> m11{1, 1};
  const auto flipped = profile_sphere_g4(sphere_from_kappa1(4, 2.0, m11));
  EXPECT_TRUE(flipped.flipped());
  const auto p = profile_sphere_g4(sphere_from_kappa1(4, 3.0, m11));
  EXPECT_FALSE(p.flipped());
  EXPECT_NEAR(*p.parameter("a"), 7.0 / 6.0, 1e-15);
  EXPECT_EQ(*p.parameter("b"), 0.0);
  EXPECT_NEAR(p.t_star(), std::log(std::sqrt(49.0 / 36.0 + 16.0) / (7.0 / 6.0)) / 16.0, 1e-15);
  EXPECT_NEAR(p.xi(0.0), 0.0, 1e-15);
  // kappa1 = 2 flips to kappa1' = 3: same surface, opposite normal.
  EXPECT_NEAR(flipped.t_star(), p.t_star(), 1e-15);
  EXPECT_NEAR(flipped.xi(0.05), -p.xi(0.05), 1e-15);
}

TEST(ClosedForm, SphereG4TStarForms) {
  for (int m1 = 1; m1 <= 4; ++m1) {
    for (int m2 = 1; m2 <= 4; ++m2) {
      for (double k = 1.1; k < 12.0; k *= 1.4) {
        const std::array<int, 2> m{m1, m2};
        const auto s = sphere_from_kappa1(4, k, m);
        if (s.mean_curvature() <= 0.0) continue;
        const auto p = profile_sphere_g4(s);
        const int n = 2 * (m1 + m2);
        const double w = m1 * (k * k + 1) * (k * k + 1);
        EXPECT_NEAR(p.t_star(), std::log(w / (w - 2.0 * n * k * k)) / (4.0 * n), 1e-10);
      }
    }
  }
}

TEST(ClosedForm, SphereG6) {
  const std::array<int, 1> m1{1};
  const auto a = profile_sphere_g6(sphere_from_kappa1(6, 2.0, m1));
  EXPECT_TRUE(a.flipped());
  EXPECT_NEAR(a.xi(0.0), 0.0, 1e-15);
  const auto b = profile_sphere_g6(sphere_from_kappa1(6, 3.0, m1));
  EXPECT_TRUE(b.flipped());
  const double a_flipped = *b.parameter("a");
  EXPECT_NEAR(a_flipped, 1056.0 / 468.0, 1e-13);
  EXPECT_NEAR(b.t_star(), std::log1p(36.0 / (a_flipped * a_flipped)) / 72.0, 1e-15);
}

TEST(ClosedForm, FamilyMismatch) {
  EXPECT_THROW((void)profile_sphere_g2(make_sphere_umbilic(2, 1.0)), FamilyMismatch);
  EXPECT_THROW((void)profile_horosphere(make_hyperbolic_umbilic(2, 2.0)), FamilyMismatch);
}

TEST(ClosedForm, MinimalIsConstant) {
  const auto p = resolve_profile(make_minimal(SpaceForm::sphere(), {{1.0, 1}, {-1.0, 1}}));
  EXPECT_TRUE(p.stationary());
  EXPECT_EQ(p.xi(123.0), 0.0);
  EXPECT_TRUE(std::isinf(p.t_star()));
}

TEST(ClosedForm, AgreesWithQuadratureOracle) {
  const std::array<int, 1> m2{2};
  const std::array<int, 2> m21{2, 1};
  const std::vector<IsoparametricSurface> cases{
      make_hyperbolic_cylinder(2, 3, 1.5), make_sphere_product(2, 5, 2.0), sphere_from_kappa1(3, 3.0, m2),
      sphere_from_kappa1(4, 1.5, m21), sphere_from_kappa1(6, 4.0, m2), make_hyperbolic_umbilic(1, -3.0)};
  for (const auto& s : cases) {
    const auto p = resolve_profile(s);
    const int kbar = s.space_form().curvature();
    EXPECT_NEAR(p.t_star(), oracle::collapse_time(kbar, blocks_of(s)), 1e-12 * p.t_star());
    for (int i = 1; i <= 5; ++i) {
      const double t = 0.19 * i * p.t_star();
      EXPECT_NEAR(p.xi(t), oracle::offset_at(kbar, blocks_of(s), t), 1e-10) << family_name(s.family());
    }
  }
}

TEST(ClosedForm, BackwardDomain) {
  const auto p = resolve_profile(make_sphere_product(1, 3, 2.0));
  EXPECT_TRUE(std::isinf(p.t_min()));
  const auto ode = integrate(make_sphere_product(1, 3, 2.0), -1.0);
  for (double t : {-0.1, -0.5, -1.0}) EXPECT_NEAR(p.xi(t), ode.xi(t), 1e-9);
}
