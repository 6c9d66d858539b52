#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "isoflow/space_form.hpp"

namespace isoflow {

/// The isoparametric families with an explicit flow, plus minimal (stationary) data.
enum class Family {
  EuclideanCylinder,   // S^m x R^{n-m} in R^{n+1}; m = n is the round sphere
  Horosphere,          // all curvatures +-1 in H^{n+1}
  HyperbolicUmbilic,   // one curvature, |kappa| not in {0, 1}, in H^{n+1}
  HyperbolicCylinder,  // S^{m1} x H^{m2} in H^{n+1}, kappa1 kappa2 = 1
  SphereUmbilic,       // g = 1 in S^{n+1}
  SphereProduct,       // g = 2 in S^{n+1}, kappa1 kappa2 = -1
  SphereG3,
  SphereG4,
  SphereG6,
  Minimal,
};

[[nodiscard]] std::string_view family_name(Family family) noexcept;
/// Throws InvalidInput for an unknown tag.
[[nodiscard]] Family family_from_name(std::string_view name);
[[nodiscard]] std::span<const Family> all_families() noexcept;

struct CurvatureBlock {
  double kappa;
  int mult;

  friend bool operator==(const CurvatureBlock&, const CurvatureBlock&) = default;
};

/// Tolerance on |H| below which a surface is minimal.
inline constexpr double kMinimalTolerance = 1e-10;

/// Immutable curvature data of an isoparametric hypersurface: ambient space form,
/// distinct principal curvatures (sorted descending) with multiplicities, and a family tag.
class IsoparametricSurface {
 public:
  /// Validates the structural rules of the space form and the family tag;
  /// throws InvalidSurface on violation. Blocks are sorted descending by kappa.
  static IsoparametricSurface create(SpaceForm sf, std::vector<CurvatureBlock> blocks, Family family);

  [[nodiscard]] SpaceForm space_form() const noexcept { return space_form_; }
  [[nodiscard]] std::span<const CurvatureBlock> blocks() const noexcept { return blocks_; }
  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  /// Number g of distinct principal curvatures.
  [[nodiscard]] int distinct_count() const noexcept { return static_cast<int>(blocks_.size()); }
  /// Unnormalized mean curvature H = sum of all principal curvatures.
  [[nodiscard]] double mean_curvature() const noexcept;
  [[nodiscard]] bool is_minimal() const noexcept;

  /// Same hypersurface with the unit normal reversed: every kappa negated.
  [[nodiscard]] IsoparametricSurface flipped() const;

  struct Oriented;
  /// The orientation with H >= 0 and whether a flip was needed to reach it.
  [[nodiscard]] Oriented oriented() const;

 private:
  IsoparametricSurface(SpaceForm sf, std::vector<CurvatureBlock> blocks, Family family);

  SpaceForm space_form_;
  std::vector<CurvatureBlock> blocks_;
  Family family_;
  int dimension_;
};

struct IsoparametricSurface::Oriented {
  IsoparametricSurface surface;
  bool flipped;
};

// Family constructors. All throw InvalidSurface when a precondition fails.

[[nodiscard]] IsoparametricSurface make_euclidean_cylinder(int m, int n, double kappa);
[[nodiscard]] IsoparametricSurface make_horosphere(int n, double kappa);
[[nodiscard]] IsoparametricSurface make_hyperbolic_umbilic(int n, double kappa);
[[nodiscard]] IsoparametricSurface make_hyperbolic_cylinder(int m1, int m2, double kappa1);
[[nodiscard]] IsoparametricSurface make_sphere_umbilic(int n, double kappa);
/// Product S^l x S^{n-l}; requires the non-minimal branch kappa1 > sqrt((n-l)/l).
[[nodiscard]] IsoparametricSurface make_sphere_product(int l, int n, double kappa1);

/// Spherical family with kappa_j = cot(s + (j-1) pi / g).
/// `mults` is either the full list of g multiplicities or the short form:
/// g=2 {l, n-l}; g=3 {m}; g=4 {m1, m2}; g=6 {m}.
[[nodiscard]] IsoparametricSurface sphere_curvatures_from_g(int g, double s, std::span<const int> mults);

/// Same family parametrized by its largest curvature, s = arccot(kappa1).
[[nodiscard]] IsoparametricSurface sphere_from_kappa1(int g, double kappa1, std::span<const int> mults);

/// Any structurally valid data with |sum m_i kappa_i| < kMinimalTolerance.
[[nodiscard]] IsoparametricSurface make_minimal(SpaceForm sf, std::vector<CurvatureBlock> blocks);

/// Mean curvature sum m_i kappa_i(xi) of the parallel hypersurface at offset xi.
/// Throws SingularParallel at a focal offset.
[[nodiscard]] double mean_curvature(const IsoparametricSurface& surface, double xi);

/// Closed-form sum a = kappa_1 + ... + kappa_g of the distinct spherical curvatures
/// (one per block) as a rational function of kappa1, for g in {2, 3, 4, 6}.
[[nodiscard]] double sphere_curvature_sum(int g, double kappa1);

/// The four curvatures of a g = 4 family in terms of kappa1 > 1.
[[nodiscard]] std::array<double, 4> g4_curvatures(double kappa1);

}  // namespace isoflow
