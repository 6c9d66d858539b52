#pragma once

#include <optional>
#include <span>
#include <vector>

namespace isoflow {

/// Ambient space form of constant sectional curvature -1, 0 or +1:
/// hyperbolic space (hyperboloid model), Euclidean space, or the unit sphere.
class SpaceForm {
 public:
  /// Throws InvalidInput unless curvature is -1, 0 or 1.
  explicit SpaceForm(int curvature);

  static SpaceForm hyperbolic() { return SpaceForm(-1); }
  static SpaceForm euclidean() { return SpaceForm(0); }
  static SpaceForm sphere() { return SpaceForm(1); }

  [[nodiscard]] int curvature() const noexcept { return curvature_; }

  friend bool operator==(SpaceForm, SpaceForm) = default;

 private:
  int curvature_;
};

/// Generalized trigonometric pair: (1, xi), (cos xi, sin xi) or (cosh xi, sinh xi).
struct CsPair {
  double c;
  double s;
};

/// A normal-geodesic offset together with its (c, s) pair.
struct ParallelData {
  double xi;
  CsPair cs;
};

/// Relative floor below which c - kappa s counts as a focal point.
inline constexpr double kSingularDenominator = 1e-12;

[[nodiscard]] CsPair cs_eval(SpaceForm sf, double xi);
[[nodiscard]] ParallelData parallel_data(SpaceForm sf, double xi);

/// Numerator (kbar s + kappa c) and denominator (c - kappa s) of the evolved
/// principal curvature, both scaled by the same positive factor. The scaling
/// keeps hyperbolic offsets free of cosh/sinh cancellation; near a spherical
/// focal point the angle form cot(theta - xi), kappa = cot(theta), is used.
struct ParallelTerms {
  double numerator;
  double denominator;
};

[[nodiscard]] ParallelTerms parallel_terms(SpaceForm sf, double kappa, double xi);

/// Evolved principal curvature (kbar s + kappa c) / (c - kappa s).
/// Throws SingularParallel at a focal point.
[[nodiscard]] double parallel_curvature(SpaceForm sf, double kappa, double xi);

/// Signed c(xi) - kappa s(xi), unscaled.
[[nodiscard]] double parallel_denominator(SpaceForm sf, double kappa, double xi);

/// Diagonal metric coefficient (c - kappa s)^2 of the parallel hypersurface.
[[nodiscard]] double parallel_metric_factor(SpaceForm sf, double kappa, double xi);

/// Whether c - kappa s has a zero at all (no zero: hyperbolic |kappa| <= 1, flat kappa = 0).
[[nodiscard]] bool has_focal_point(SpaceForm sf, double kappa) noexcept;

/// The offset of the nearest focal point in the given direction (+1 or -1).
[[nodiscard]] std::optional<double> focal_distance(SpaceForm sf, double kappa, int direction);

using AmbientVector = std::vector<double>;

/// Euclidean inner product, or the Lorentzian one (minus sign on coordinate 0) for kbar = -1.
[[nodiscard]] double ambient_inner(SpaceForm sf, std::span<const double> a, std::span<const double> b);

/// Throws InvalidFrame when (F, N) leaves the ambient quadric:
/// <F,F> = kbar, <F,N> = 0, <N,N> = 1 (only <N,N> = 1 for kbar = 0).
void check_frame(SpaceForm sf, std::span<const double> point, std::span<const double> normal,
                 double tol = 1e-10);

/// Residual of the frame constraints, relative to the coordinate magnitudes.
[[nodiscard]] double frame_residual(SpaceForm sf, std::span<const double> point,
                                    std::span<const double> normal);

struct AmbientFrame {
  AmbientVector point;
  AmbientVector normal;
};

/// (c F + s N, -kbar s F + c N): the point and unit normal of the parallel hypersurface.
[[nodiscard]] AmbientFrame parallel_point(SpaceForm sf, std::span<const double> point,
                                          std::span<const double> normal, double xi);

}  // namespace isoflow
