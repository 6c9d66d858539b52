#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <isoflow/flow_ode.hpp>
#include <isoflow/surface.hpp>

namespace isoflow::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kInvalidConfig = 2,
  kUnsupported = 3,
  kNumericalFailure = 4,
};

/// Inline surface description; every field mirrors one command-line flag.
struct SurfaceArgs {
  std::string family;
  std::optional<std::string> surface_file;
  std::optional<int> space_form;
  std::vector<std::string> blocks;  // "kappa:mult"
  std::optional<int> m, n, l, m1, m2, g;
  std::optional<double> kappa, kappa1, s;
  std::vector<int> mults;

  [[nodiscard]] bool empty() const;
};

/// Throws InvalidInput for missing or conflicting flags, InvalidSurface for bad data.
[[nodiscard]] IsoparametricSurface build_surface(const SurfaceArgs& args);

/// Defaults, then ISOFLOW_TOL ("rel" or "rel,abs"), then explicit flags.
[[nodiscard]] OdeOptions resolve_tolerances(std::optional<double> rel_tol, std::optional<double> abs_tol);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isoflow::cli
