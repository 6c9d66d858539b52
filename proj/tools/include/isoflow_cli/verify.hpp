#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <isoflow/flow_ode.hpp>
#include <isoflow/surface.hpp>

namespace isoflow::cli {

struct NamedSurface {
  std::string label;
  IsoparametricSurface surface;
};

/// About fifty instances covering every family, both orientations and minimal data.
[[nodiscard]] std::vector<NamedSurface> verification_grid();

struct CheckResult {
  std::string check;
  std::string instance;
  bool passed;
  /// Worst value observed; NaN for checks that do not apply.
  double value;
  double tolerance;
  std::string note;
};

[[nodiscard]] std::span<const std::string_view> check_names() noexcept;

/// Runs the named checks (all when `checks` is empty) on one surface.
/// Throws InvalidInput for an unknown check name.
[[nodiscard]] std::vector<CheckResult> run_checks(const NamedSurface& instance,
                                                  std::span<const std::string> checks,
                                                  const OdeOptions& opts);

}  // namespace isoflow::cli
