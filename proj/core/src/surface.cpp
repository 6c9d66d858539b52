#include "isoflow/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

constexpr double kBlockSeparation = 1e-9;
constexpr double kPatternTolerance = 1e-9;
constexpr double kProductTolerance = 1e-12;
constexpr double kUnitTolerance = 1e-12;

constexpr std::array kFamilies{
    Family::EuclideanCylinder, Family::Horosphere, Family::HyperbolicUmbilic,
    Family::HyperbolicCylinder, Family::SphereUmbilic, Family::SphereProduct,
    Family::SphereG3, Family::SphereG4, Family::SphereG6, Family::Minimal,
};

[[noreturn]] void reject(const std::string& why) { throw InvalidSurface(why); }

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double sum_h(std::span<const CurvatureBlock> blocks) {
  double h = 0.0;
  for (const auto& b : blocks) h += b.mult * b.kappa;
  return h;
}

// kappa_j = cot(s + (j-1) pi / g) with s = arccot(kappa_1).
void check_spherical_pattern(std::span<const CurvatureBlock> blocks) {
  const int g = static_cast<int>(blocks.size());
  const double s = std::atan2(1.0, blocks.front().kappa);
  for (int j = 1; j < g; ++j) {
    const double angle = s + j * std::numbers::pi / g;
    const double expected = std::cos(angle) / std::sin(angle);
    const double actual = blocks[j].kappa;
    if (std::abs(actual - expected) > kPatternTolerance * std::max(1.0, std::abs(expected))) {
      reject("spherical g=" + std::to_string(g) + " curvature " + std::to_string(j + 1) + " is " +
             describe(actual) + ", expected cot(s+" + std::to_string(j) + "pi/" + std::to_string(g) +
             ") = " + describe(expected));
    }
  }
}

void check_sphere(std::span<const CurvatureBlock> blocks) {
  const int g = static_cast<int>(blocks.size());
  switch (g) {
    case 1:
      return;
    case 2: {
      const double product = blocks[0].kappa * blocks[1].kappa;
      if (std::abs(product + 1.0) > kProductTolerance) {
        reject("g=2 in the sphere requires kappa1 kappa2 = -1, got " + describe(product));
      }
      return;
    }
    case 3: {
      const int m = blocks[0].mult;
      if (blocks[1].mult != m || blocks[2].mult != m) reject("g=3 requires equal multiplicities");
      if (m != 1 && m != 2 && m != 4 && m != 8) reject("g=3 requires multiplicity 1, 2, 4 or 8");
      break;
    }
    case 4:
      if (blocks[0].mult != blocks[2].mult || blocks[1].mult != blocks[3].mult) {
        reject("g=4 requires m1 = m3 and m2 = m4");
      }
      break;
    case 6: {
      const int m = blocks[0].mult;
      for (const auto& b : blocks) {
        if (b.mult != m) reject("g=6 requires equal multiplicities");
      }
      if (m != 1 && m != 2) reject("g=6 requires multiplicity 1 or 2");
      break;
    }
    default:
      reject("a hypersurface of the sphere has g in {1,2,3,4,6} distinct curvatures, got " +
             std::to_string(g));
  }
  check_spherical_pattern(blocks);
}

void check_hyperbolic(std::span<const CurvatureBlock> blocks) {
  if (blocks.size() > 2) reject("isoparametric hypersurfaces of H^{n+1} have at most 2 curvatures");
  if (blocks.size() == 2) {
    const double product = blocks[0].kappa * blocks[1].kappa;
    if (std::abs(product - 1.0) > kProductTolerance) {
      reject("hyperbolic cylinder requires kappa1 kappa2 = 1, got " + describe(product));
    }
  }
}

void check_euclidean(std::span<const CurvatureBlock> blocks) {
  if (blocks.size() > 2) reject("isoparametric hypersurfaces of R^{n+1} have at most 2 curvatures");
  if (blocks.size() == 2 && std::abs(blocks[0].kappa) > kUnitTolerance &&
      std::abs(blocks[1].kappa) > kUnitTolerance) {
    reject("a Euclidean cylinder has one zero principal curvature");
  }
}

Family structural_family(SpaceForm sf, std::span<const CurvatureBlock> blocks) {
  const int g = static_cast<int>(blocks.size());
  const double k = blocks.front().kappa;
  switch (sf.curvature()) {
    case 0:
      return (g == 1 && k == 0.0) ? Family::Minimal : Family::EuclideanCylinder;
    case -1:
      if (g == 2) return Family::HyperbolicCylinder;
      if (k == 0.0) return Family::Minimal;
      return std::abs(k) == 1.0 ? Family::Horosphere : Family::HyperbolicUmbilic;
    default:
      switch (g) {
        case 1:
          return k == 0.0 ? Family::Minimal : Family::SphereUmbilic;
        case 2:
          return Family::SphereProduct;
        case 3:
          return Family::SphereG3;
        case 4:
          return Family::SphereG4;
        default:
          return Family::SphereG6;
      }
  }
}

std::vector<CurvatureBlock> expand_sphere_mults(int g, std::span<const int> mults) {
  std::vector<int> full;
  if (static_cast<int>(mults.size()) == g) {
    full.assign(mults.begin(), mults.end());
  } else if (g == 3 && mults.size() == 1) {
    full.assign(3, mults[0]);
  } else if (g == 6 && mults.size() == 1) {
    full.assign(6, mults[0]);
  } else if (g == 4 && mults.size() == 2) {
    full = {mults[0], mults[1], mults[0], mults[1]};
  } else {
    reject("multiplicity list of length " + std::to_string(mults.size()) + " does not fit g=" +
           std::to_string(g));
  }
  std::vector<CurvatureBlock> blocks;
  for (int m : full) blocks.push_back({0.0, m});
  return blocks;
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::EuclideanCylinder:
      return "euclidean-cylinder";
    case Family::Horosphere:
      return "horosphere";
    case Family::HyperbolicUmbilic:
      return "hyperbolic-umbilic";
    case Family::HyperbolicCylinder:
      return "hyperbolic-cylinder";
    case Family::SphereUmbilic:
      return "sphere-umbilic";
    case Family::SphereProduct:
      return "sphere-product";
    case Family::SphereG3:
      return "sphere-g3";
    case Family::SphereG4:
      return "sphere-g4";
    case Family::SphereG6:
      return "sphere-g6";
    case Family::Minimal:
      return "minimal";
  }
  return "unknown";
}

Family family_from_name(std::string_view name) {
  for (Family f : kFamilies) {
    if (family_name(f) == name) return f;
  }
  throw InvalidInput("unknown family tag '" + std::string(name) + "'");
}

std::span<const Family> all_families() noexcept { return kFamilies; }

IsoparametricSurface::IsoparametricSurface(SpaceForm sf, std::vector<CurvatureBlock> blocks,
                                           Family family)
    : space_form_(sf), blocks_(std::move(blocks)), family_(family), dimension_(0) {
  for (const auto& b : blocks_) dimension_ += b.mult;
}

IsoparametricSurface IsoparametricSurface::create(SpaceForm sf, std::vector<CurvatureBlock> blocks,
                                                  Family family) {
  if (blocks.empty()) reject("at least one curvature block is required");
  for (const auto& b : blocks) {
    if (!std::isfinite(b.kappa)) reject("principal curvatures must be finite");
    if (b.mult < 1) reject("multiplicities must be positive");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const CurvatureBlock& a, const CurvatureBlock& b) { return a.kappa > b.kappa; });
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i - 1].kappa - blocks[i].kappa <= kBlockSeparation) {
      reject("distinct blocks must have distinct curvatures (separation > 1e-9)");
    }
  }
  // Snap curvatures that are 0 or +-1 up to rounding so the family is unambiguous.
  for (auto& b : blocks) {
    if (std::abs(b.kappa) <= kUnitTolerance) b.kappa = 0.0;
    if (sf.curvature() == -1 && blocks.size() == 1 && std::abs(std::abs(b.kappa) - 1.0) <= kUnitTolerance) {
      b.kappa = std::copysign(1.0, b.kappa);
    }
  }

  switch (sf.curvature()) {
    case 1:
      check_sphere(blocks);
      break;
    case -1:
      check_hyperbolic(blocks);
      break;
    default:
      check_euclidean(blocks);
      break;
  }

  const Family structural = structural_family(sf, blocks);
  const bool minimal = std::abs(sum_h(blocks)) < kMinimalTolerance;
  if (family == Family::Minimal) {
    if (!minimal) {
      reject("family 'minimal' requires H = 0, got H = " + describe(sum_h(blocks)));
    }
  } else if (family != structural) {
    reject("curvature data describes a " + std::string(family_name(structural)) +
           ", not a " + std::string(family_name(family)));
  }
  return IsoparametricSurface(sf, std::move(blocks), family);
}

double IsoparametricSurface::mean_curvature() const noexcept { return sum_h(blocks_); }

bool IsoparametricSurface::is_minimal() const noexcept {
  return std::abs(mean_curvature()) < kMinimalTolerance;
}

IsoparametricSurface IsoparametricSurface::flipped() const {
  std::vector<CurvatureBlock> negated;
  negated.reserve(blocks_.size());
  for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
    negated.push_back({-it->kappa + 0.0, it->mult});
  }
  return IsoparametricSurface(space_form_, std::move(negated), family_);
}

IsoparametricSurface::Oriented IsoparametricSurface::oriented() const {
  if (!is_minimal() && mean_curvature() < 0.0) {
    return {flipped(), true};
  }
  return {*this, false};
}

IsoparametricSurface make_euclidean_cylinder(int m, int n, double kappa) {
  if (m < 1 || m > n) reject("euclidean cylinder requires 1 <= m <= n");
  if (kappa == 0.0 || !std::isfinite(kappa)) {
    reject("euclidean cylinder requires kappa != 0 (kappa = 0 is a minimal plane)");
  }
  std::vector<CurvatureBlock> blocks{{kappa, m}};
  if (m < n) blocks.push_back({0.0, n - m});
  return IsoparametricSurface::create(SpaceForm::euclidean(), std::move(blocks), Family::EuclideanCylinder);
}

IsoparametricSurface make_horosphere(int n, double kappa) {
  if (n < 1) reject("dimension must be positive");
  if (kappa != 1.0 && kappa != -1.0) {
    reject("horosphere requires kappa = +-1, got " + describe(kappa));
  }
  return IsoparametricSurface::create(SpaceForm::hyperbolic(), {{kappa, n}}, Family::Horosphere);
}

IsoparametricSurface make_hyperbolic_umbilic(int n, double kappa) {
  if (n < 1) reject("dimension must be positive");
  if (!std::isfinite(kappa) || kappa == 0.0 || std::abs(kappa) == 1.0) {
    reject("hyperbolic umbilic requires kappa not in {0, +-1}, got " + describe(kappa));
  }
  return IsoparametricSurface::create(SpaceForm::hyperbolic(), {{kappa, n}}, Family::HyperbolicUmbilic);
}

IsoparametricSurface make_hyperbolic_cylinder(int m1, int m2, double kappa1) {
  if (m1 < 1 || m2 < 1) reject("multiplicities must be positive");
  if (!(kappa1 > 1.0) || !std::isfinite(kappa1)) {
    reject("hyperbolic cylinder requires kappa1 > 1, got " + describe(kappa1));
  }
  return IsoparametricSurface::create(SpaceForm::hyperbolic(), {{kappa1, m1}, {1.0 / kappa1, m2}},
                                      Family::HyperbolicCylinder);
}

IsoparametricSurface make_sphere_umbilic(int n, double kappa) {
  if (n < 1) reject("dimension must be positive");
  if (kappa == 0.0 || !std::isfinite(kappa)) {
    reject("sphere umbilic requires kappa != 0 (kappa = 0 is the minimal equator)");
  }
  return IsoparametricSurface::create(SpaceForm::sphere(), {{kappa, n}}, Family::SphereUmbilic);
}

IsoparametricSurface make_sphere_product(int l, int n, double kappa1) {
  if (l < 1 || n <= l) reject("sphere product requires 1 <= l < n");
  const double threshold = std::sqrt(static_cast<double>(n - l) / l);
  if (!(kappa1 > threshold) || !std::isfinite(kappa1)) {
    reject("sphere product requires kappa1 > sqrt((n-l)/l) = " + describe(threshold) + ", got " +
           describe(kappa1));
  }
  return IsoparametricSurface::create(SpaceForm::sphere(), {{kappa1, l}, {-1.0 / kappa1, n - l}},
                                      Family::SphereProduct);
}

IsoparametricSurface sphere_curvatures_from_g(int g, double s, std::span<const int> mults) {
  if (g != 2 && g != 3 && g != 4 && g != 6) reject("g must be 2, 3, 4 or 6");
  const double width = std::numbers::pi / g;
  if (!(s > 0.0 && s < width)) reject("s must lie in (0, pi/g)");
  auto blocks = expand_sphere_mults(g, mults);
  for (int j = 0; j < g; ++j) {
    const double angle = s + j * width;
    blocks[j].kappa = std::cos(angle) / std::sin(angle);
  }
  const Family family = g == 2 ? Family::SphereProduct
                      : g == 3 ? Family::SphereG3
                      : g == 4 ? Family::SphereG4
                               : Family::SphereG6;
  return IsoparametricSurface::create(SpaceForm::sphere(), std::move(blocks), family);
}

IsoparametricSurface sphere_from_kappa1(int g, double kappa1, std::span<const int> mults) {
  if (!std::isfinite(kappa1)) reject("kappa1 must be finite");
  return sphere_curvatures_from_g(g, std::atan2(1.0, kappa1), mults);
}

IsoparametricSurface make_minimal(SpaceForm sf, std::vector<CurvatureBlock> blocks) {
  return IsoparametricSurface::create(sf, std::move(blocks), Family::Minimal);
}

double mean_curvature(const IsoparametricSurface& surface, double xi) {
  double h = 0.0;
  for (const auto& b : surface.blocks()) {
    h += b.mult * parallel_curvature(surface.space_form(), b.kappa, xi);
  }
  return h;
}

double sphere_curvature_sum(int g, double kappa1) {
  const double k = kappa1;
  const double k2 = k * k;
  switch (g) {
    case 2:
      return k - 1.0 / k;
    case 3:
      return 3.0 * k * (k2 - 3.0) / (3.0 * k2 - 1.0);
    case 4:
      return (k2 * k2 - 6.0 * k2 + 1.0) / (k * (k2 - 1.0));
    case 6:
      // 6 cot(6s) for kappa1 = cot(s).
      return 3.0 * (k2 * k2 * k2 - 15.0 * k2 * k2 + 15.0 * k2 - 1.0) /
             (k * (k2 - 3.0) * (3.0 * k2 - 1.0));
    default:
      throw InvalidInput("g must be 2, 3, 4 or 6");
  }
}

std::array<double, 4> g4_curvatures(double kappa1) {
  return {kappa1, (kappa1 - 1.0) / (kappa1 + 1.0), -1.0 / kappa1, -(kappa1 + 1.0) / (kappa1 - 1.0)};
}

}  // namespace isoflow
