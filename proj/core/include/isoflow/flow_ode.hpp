#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "isoflow/surface.hpp"

namespace isoflow {

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.5;
  /// Integration stops once the smallest metric factor of a focal-capable block drops below this.
  double singularity_guard = 1e-9;
  /// Forward time after which a flow without a guard trigger is declared eternal.
  double horizon = 50.0;
  std::size_t max_steps = 200000;

  /// Throws InvalidInput unless all fields are positive and rel_tol >= 1e-14.
  void validate() const;
};

enum class Termination { ReachedEnd, HitSingularity };

/// Right-hand side of xi' = H(xi): the mean curvature of the parallel hypersurface.
/// Throws SingularParallel when a metric factor reaches the guard.
[[nodiscard]] double rhs(const IsoparametricSurface& surface, double xi,
                         double singularity_guard = OdeOptions{}.singularity_guard);

/// Dense numerical solution of xi' = H(xi), xi(0) = 0, on [min(0,t_end), max(0,t_end)]
/// or up to the focal guard.
class NumericProfile {
 public:
  struct Step {
    double t0, t1;
    // Hairer's dopri5 continuous-extension coefficients.
    double r1, r2, r3, r4, r5;
  };

  NumericProfile(std::vector<Step> steps, Termination cause, std::optional<double> t_star,
                 std::optional<double> t_star_error, std::optional<std::size_t> degenerate_block);

  /// Dense-output value; throws InvalidInput outside the integrated interval.
  [[nodiscard]] double xi(double t) const;

  [[nodiscard]] double t_begin() const noexcept { return 0.0; }
  /// Last time reached (t_end, or the last accepted step before the guard fired).
  [[nodiscard]] double t_last() const noexcept;
  [[nodiscard]] double xi_last() const noexcept;
  [[nodiscard]] Termination termination() const noexcept { return cause_; }
  /// Refined singular time when the guard fired.
  [[nodiscard]] std::optional<double> t_star() const noexcept { return t_star_; }
  [[nodiscard]] std::optional<double> t_star_error() const noexcept { return t_star_error_; }
  /// Index of the block whose metric factor triggered the guard.
  [[nodiscard]] std::optional<std::size_t> degenerate_block() const noexcept { return degenerate_; }
  [[nodiscard]] std::size_t step_count() const noexcept { return steps_.size(); }
  /// Accepted step end points t_0 = 0 < ... (or decreasing for backward runs).
  [[nodiscard]] std::vector<double> sample_times() const;

 private:
  std::vector<Step> steps_;
  Termination cause_;
  std::optional<double> t_star_;
  std::optional<double> t_star_error_;
  std::optional<std::size_t> degenerate_;
};

/// Adaptive Dormand-Prince 5(4) integration of the flow. t_end may be negative.
/// Throws IntegrationFailure on step-size underflow or an exhausted step budget.
[[nodiscard]] NumericProfile integrate(const IsoparametricSurface& surface, double t_end,
                                       const OdeOptions& opts = {});

struct TStarEstimate {
  /// +infinity when the flow runs to the horizon without reaching a focal point.
  double t_star;
  double error_bound;
  std::optional<std::size_t> degenerate_block;
};

/// Forward collapse time from the ODE alone.
[[nodiscard]] TStarEstimate estimate_tstar(const IsoparametricSurface& surface, const OdeOptions& opts = {});

}  // namespace isoflow
