#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoflow/surface.hpp"

namespace isoflow {

/// (cos g xi, sin g xi) for spherical families or (cosh k xi, sinh k xi) for
/// hyperbolic ones, as produced directly by the closed-form solution.
struct AnglePair {
  int multiple;
  bool hyperbolic;
  double cos_value;
  double sin_value;

  /// |cos^2 + sin^2 - 1|, or |cosh^2 - sinh^2 - 1| relative to max(1, cosh^2).
  [[nodiscard]] double identity_residual() const noexcept;
};

namespace detail {
class ProfileResolver;
}

/// Exact evolution xi(t) of one family on its maximal domain (t_min, t_star).
///
/// Resolvers work in the orientation with H > 0; the stored flip restores the
/// caller's sign, so xi() is always the offset along the caller's normal.
class ClosedFormProfile {
 public:
  explicit ClosedFormProfile(std::shared_ptr<const detail::ProfileResolver> resolver);

  [[nodiscard]] Family family() const noexcept;
  [[nodiscard]] bool flipped() const noexcept;
  /// True for minimal data: xi is identically zero.
  [[nodiscard]] bool stationary() const noexcept;
  [[nodiscard]] double t_min() const noexcept;
  /// +infinity when the flow exists for all forward time.
  [[nodiscard]] double t_star() const noexcept;

  /// Offset at time t. t = t_star is allowed and gives the limit value.
  /// Throws InvalidInput outside [t_min, t_star].
  [[nodiscard]] double xi(double t) const;
  /// Angle pair in the H > 0 orientation (absent for the Euclidean, horosphere and minimal cases).
  [[nodiscard]] std::optional<AnglePair> pair(double t) const;
  /// The auxiliary q(t) of the family, where one is defined.
  [[nodiscard]] std::optional<double> q(double t) const;
  /// Named constants (a, b, kappa, m, n, ...) of the resolved family.
  [[nodiscard]] const std::vector<std::pair<std::string, double>>& parameters() const noexcept;
  [[nodiscard]] std::optional<double> parameter(std::string_view name) const;

 private:
  std::shared_ptr<const detail::ProfileResolver> resolver_;
};

[[nodiscard]] ClosedFormProfile profile_euclidean(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_horosphere(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_hyperbolic_umbilic(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_hyperbolic_cylinder(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_sphere_umbilic(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_sphere_g2(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_sphere_g3(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_sphere_g4(const IsoparametricSurface& surface);
[[nodiscard]] ClosedFormProfile profile_sphere_g6(const IsoparametricSurface& surface);

/// Minimal data gives the constant profile; everything else dispatches on the family tag.
[[nodiscard]] ClosedFormProfile resolve_profile(const IsoparametricSurface& surface);

}  // namespace isoflow
