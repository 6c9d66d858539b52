#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include <isoflow/errors.hpp>
#include <isoflow/surface.hpp>

using namespace isoflow;

namespace {
std::vector<CurvatureBlock> blocks_of(const IsoparametricSurface& s) { return {s.blocks().begin(), s.blocks().end()}; }
}  // namespace

TEST(Catalog, EuclideanCylinder) {
  EXPECT_EQ(blocks_of(make_euclidean_cylinder(2, 2, 1.0)), (std::vector<CurvatureBlock>{{1.0, 2}}));
  EXPECT_EQ(blocks_of(make_euclidean_cylinder(1, 2, 1.0)), (std::vector<CurvatureBlock>{{1.0, 1}, {0.0, 1}}));
  EXPECT_EQ(blocks_of(make_euclidean_cylinder(1, 3, -2.0)), (std::vector<CurvatureBlock>{{0.0, 2}, {-2.0, 1}}));
  EXPECT_THROW((void)make_euclidean_cylinder(1, 3, 0.0), InvalidSurface);
  EXPECT_THROW((void)make_euclidean_cylinder(4, 3, 1.0), InvalidSurface);
}

TEST(Catalog, HyperbolicFamilies) {
  EXPECT_EQ(make_horosphere(3, 1.0).dimension(), 3);
  EXPECT_EQ(blocks_of(make_horosphere(1, -1.0)), (std::vector<CurvatureBlock>{{-1.0, 1}}));
  EXPECT_THROW((void)make_horosphere(3, 0.5), InvalidSurface);
  EXPECT_EQ(blocks_of(make_hyperbolic_umbilic(2, 0.5)), (std::vector<CurvatureBlock>{{0.5, 2}}));
  EXPECT_THROW((void)make_hyperbolic_umbilic(2, 1.0), InvalidSurface);
  EXPECT_THROW((void)make_hyperbolic_umbilic(2, 0.0), InvalidSurface);
  const auto cyl = make_hyperbolic_cylinder(2, 3, 3.0);
  EXPECT_EQ(cyl.blocks()[0], (CurvatureBlock{3.0, 2}));
  EXPECT_DOUBLE_EQ(cyl.blocks()[1].kappa, 1.0 / 3.0);
  EXPECT_EQ(cyl.dimension(), 5);
  EXPECT_THROW((void)make_hyperbolic_cylinder(1, 1, 1.0), InvalidSurface);
}

TEST(Catalog, SphereFamilies) {
  EXPECT_EQ(blocks_of(make_sphere_umbilic(5, -0.3)), (std::vector<CurvatureBlock>{{-0.3, 5}}));
  EXPECT_THROW((void)make_sphere_umbilic(2, 0.0), InvalidSurface);
  EXPECT_EQ(blocks_of(make_sphere_product(1, 2, 2.0)), (std::vector<CurvatureBlock>{{2.0, 1}, {-0.5, 1}}));
  EXPECT_EQ(blocks_of(make_sphere_product(2, 5, 2.0)), (std::vector<CurvatureBlock>{{2.0, 2}, {-0.5, 3}}));
  EXPECT_THROW((void)make_sphere_product(1, 2, 1.0), InvalidSurface);
}

TEST(Catalog, CurvaturesFromG) {
  const std::array<int, 2> m11{1, 1};
  const auto g4 = sphere_curvatures_from_g(4, std::atan2(1.0, 2.0), m11);
  const std::array expected{2.0, 1.0 / 3.0, -0.5, -3.0};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(g4.blocks()[j].kappa, expected[j], 1e-14);
  EXPECT_EQ(g4.dimension(), 4);

  const auto g2 = sphere_curvatures_from_g(2, std::numbers::pi / 4, m11);
  EXPECT_NEAR(g2.blocks()[0].kappa, 1.0, 1e-15);
  EXPECT_NEAR(g2.blocks()[1].kappa, -1.0, 1e-15);
  EXPECT_TRUE(g2.is_minimal());
  EXPECT_EQ(g2.family(), Family::SphereProduct);

  const std::array<int, 1> m1{1};
  const auto g3 = sphere_curvatures_from_g(3, std::numbers::pi / 6, m1);
  EXPECT_NEAR(g3.blocks()[0].kappa, std::sqrt(3.0), 1e-14);
  EXPECT_EQ(g3.blocks()[1].kappa, 0.0);
  EXPECT_TRUE(g3.is_minimal());
}

TEST(Catalog, MultiplicityRules) {
  const std::array<int, 1> m3{3};
  EXPECT_THROW((void)sphere_from_kappa1(3, 2.0, m3), InvalidSurface);
  EXPECT_THROW((void)sphere_from_kappa1(6, 2.0, m3), InvalidSurface);
  const std::array<int, 4> bad4{1, 2, 2, 2};
  EXPECT_THROW((void)sphere_from_kappa1(4, 2.0, bad4), InvalidSurface);
  const std::array<int, 4> good4{1, 2, 1, 2};
  EXPECT_EQ(sphere_from_kappa1(4, 2.0, good4).dimension(), 6);
  EXPECT_THROW((void)sphere_curvatures_from_g(5, 0.1, m3), InvalidSurface);
  EXPECT_THROW((void)sphere_curvatures_from_g(4, 1.0, good4), InvalidSurface);
}

TEST(Catalog, StructuralRejections) {
  EXPECT_THROW((void)IsoparametricSurface::create(SpaceForm::sphere(), {{2.0, 1}, {-0.4, 1}}, Family::SphereProduct),
               InvalidSurface);
  EXPECT_THROW((void)IsoparametricSurface::create(SpaceForm::sphere(), {{1.0, 1}, {1.0, 1}}, Family::SphereProduct),
               InvalidSurface);
  EXPECT_THROW((void)IsoparametricSurface::create(SpaceForm::hyperbolic(), {{2.0, 1}, {0.4, 1}},
                                                  Family::HyperbolicCylinder),
               InvalidSurface);
  EXPECT_THROW((void)IsoparametricSurface::create(SpaceForm::sphere(), {{2.0, 2}}, Family::HyperbolicUmbilic),
               InvalidSurface);
  EXPECT_THROW((void)make_minimal(SpaceForm::sphere(), {{2.0, 1}, {-0.5, 1}}), InvalidSurface);
}

TEST(Catalog, MinimalData) {
  EXPECT_TRUE(make_minimal(SpaceForm::sphere(), {{1.0, 1}, {-1.0, 1}}).is_minimal());
  EXPECT_TRUE(make_minimal(SpaceForm::sphere(), {{0.0, 4}}).is_minimal());
  EXPECT_TRUE(make_minimal(SpaceForm::sphere(), {{std::sqrt(3.0), 1}, {0.0, 1}, {-std::sqrt(3.0), 1}}).is_minimal());
}

TEST(Catalog, FamilyNamesRoundTrip) {
  for (Family f : all_families()) EXPECT_EQ(family_from_name(family_name(f)), f);
  EXPECT_THROW((void)family_from_name("torus"), InvalidInput);
}

TEST(Catalog, Orientation) {
  const auto s = make_sphere_product(1, 2, 2.0).flipped();
  EXPECT_LT(s.mean_curvature(), 0.0);
  EXPECT_EQ(s.blocks()[0].kappa, 0.5);
  const auto [o, flipped] = s.oriented();
  EXPECT_TRUE(flipped);
  EXPECT_EQ(o.blocks()[0].kappa, 2.0);
  const std::array<int, 2> m12{1, 2};
  const auto g4 = sphere_from_kappa1(4, 2.0, m12);
  ASSERT_LT(g4.mean_curvature(), 0.0);
  EXPECT_EQ(g4.oriented().surface.blocks()[0].mult, 2);
}

TEST(MeanCurvature, WorkedValues) {
  EXPECT_DOUBLE_EQ(mean_curvature(make_euclidean_cylinder(3, 4, 0.5), 0.0), 1.5);
  EXPECT_DOUBLE_EQ(mean_curvature(make_sphere_umbilic(2, 1.0), 0.0), 2.0);
  EXPECT_DOUBLE_EQ(mean_curvature(make_euclidean_cylinder(2, 2, 1.0), 0.5), 4.0);
  EXPECT_THROW((void)mean_curvature(make_euclidean_cylinder(2, 2, 1.0), 1.0), SingularParallel);
}

TEST(CurvatureSums, AgreeWithCotangentParametrization) {
  for (int g : {2, 3, 4, 6}) {
    const double width = std::numbers::pi / g;
    for (int i = 1; i < 40; ++i) {
      const double s = width * i / 40.0;
      double sum = 0.0;
      for (int j = 0; j < g; ++j) sum += 1.0 / std::tan(s + j * width);
      const double k1 = 1.0 / std::tan(s);
      EXPECT_NEAR(sphere_curvature_sum(g, k1), sum, 1e-9 * std::max(1.0, std::abs(sum))) << "g=" << g << " s=" << s;
    }
  }
}

TEST(CurvatureSums, PrintedSixFoldFormulaIsOneThirdOfTheSum) {
  for (double k : {2.0, 3.0, 5.5}) {
    const double k2 = k * k;
    const double printed = (k2 * k2 * k2 - 15 * k2 * k2 + 15 * k2 - 1) / (k * (k2 - 3) * (3 * k2 - 1));
    EXPECT_NEAR(sphere_curvature_sum(6, k) / printed, 3.0, 1e-13);
  }
  EXPECT_NEAR(sphere_curvature_sum(6, 2.0), -351.0 / 22.0, 1e-13);
  EXPECT_NEAR(sphere_curvature_sum(6, 3.0), -1056.0 / 468.0, 1e-13);
  EXPECT_NEAR(sphere_curvature_sum(3, 2.0), 6.0 / 11.0, 1e-15);
}

TEST(CurvatureSums, FourFoldExplicitCurvatures) {
  const std::array<int, 2> m11{1, 1};
  for (double k = 1.05; k < 20.0; k *= 1.3) {
    const auto from_g = sphere_from_kappa1(4, k, m11);
    const auto explicit_k = g4_curvatures(k);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(from_g.blocks()[j].kappa, explicit_k[j], 1e-10 * std::max(1.0, k));
  }
}
