#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "isoflow/closed_form.hpp"
#include "isoflow/flow_ode.hpp"

namespace isoflow {

enum class LimitKind { Point, FocalSubmanifold, TotallyGeodesic, Eternal };

[[nodiscard]] std::string_view limit_kind_name(LimitKind kind) noexcept;

struct CollapseReport {
  Family family;
  std::string engine;  // "closed" or "ode"
  bool flipped = false;
  /// +infinity for flows that exist for all forward time.
  double t_star;
  std::optional<double> t_star_error;
  /// Index into surface.blocks() of the first block whose metric factor vanishes.
  std::optional<std::size_t> degenerate_block;
  std::optional<int> focal_dimension;
  LimitKind limit_kind;
  /// Time at which the residuals and curvatures below were taken (t* - eps, or the horizon).
  double t_eval;
  double xi_eval;
  /// |c(xi)/s(xi) - kappa_d| at t_eval for the degenerate block d.
  std::optional<double> focal_residual;
  /// The same residual at t* itself (closed forms only).
  std::optional<double> focal_residual_limit;
  /// Per block, in the order of surface.blocks().
  std::vector<double> metric_factors;
  std::vector<double> evolved_curvatures;
};

/// Offset before t* used for limit evaluations: max(1e-8, 1e-8 t*).
[[nodiscard]] double limit_epsilon(double t_star) noexcept;

/// Classification from an exact profile. Eternal flows are sampled at `horizon`.
[[nodiscard]] CollapseReport analyze(const IsoparametricSurface& surface, const ClosedFormProfile& profile,
                                     double horizon = OdeOptions{}.horizon);

/// Classification from a numerical profile. A run that stopped before both the guard
/// and the horizon carries no classification data: throws AnalysisIncomplete.
[[nodiscard]] CollapseReport analyze(const IsoparametricSurface& surface, const NumericProfile& profile,
                                     double horizon = OdeOptions{}.horizon);

/// Focal dimension claimed for the family (0 for collapse to a point);
/// absent for flows without a finite collapse.
[[nodiscard]] std::optional<int> focal_dimension_expected(const IsoparametricSurface& surface);

void to_json(nlohmann::json& j, const CollapseReport& report);

}  // namespace isoflow
