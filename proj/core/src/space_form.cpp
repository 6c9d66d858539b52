#include "isoflow/space_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

void require_finite(double xi, const char* what) {
  if (!std::isfinite(xi)) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

}  // namespace

SpaceForm::SpaceForm(int curvature) : curvature_(curvature) {
  if (curvature < -1 || curvature > 1) {
    throw InvalidInput("space form curvature must be -1, 0 or 1, got " + std::to_string(curvature));
  }
}

CsPair cs_eval(SpaceForm sf, double xi) {
  require_finite(xi, "xi");
  switch (sf.curvature()) {
    case 1:
      return {std::cos(xi), std::sin(xi)};
    case -1:
      return {std::cosh(xi), std::sinh(xi)};
    default:
      return {1.0, xi};
  }
}

ParallelData parallel_data(SpaceForm sf, double xi) { return {xi, cs_eval(sf, xi)}; }

ParallelTerms parallel_terms(SpaceForm sf, double kappa, double xi) {
  require_finite(xi, "xi");
  require_finite(kappa, "kappa");
  switch (sf.curvature()) {
    case 0:
      return {kappa, 1.0 - kappa * xi};
    case 1: {
      const double c = std::cos(xi);
      const double s = std::sin(xi);
      const double den = c - kappa * s;
      if (std::abs(den) >= 0.25) {
        return {s + kappa * c, den};
      }
      // kappa = cot(theta): numerator and denominator are cos/sin(theta - xi) / sin(theta).
      const double theta = std::atan2(1.0, kappa);
      const double inv = 1.0 / std::sin(theta);
      return {std::cos(theta - xi) * inv, std::sin(theta - xi) * inv};
    }
    default: {
      if (std::abs(xi) <= 1.0) {
        const double c = std::cosh(xi);
        const double s = std::sinh(xi);
        return {kappa * c - s, c - kappa * s};
      }
      // Factor out e^{|xi|}/2 so that |kappa| ~ 1 does not cancel two huge terms.
      const double decay = std::exp(-2.0 * std::abs(xi));
      if (xi > 0.0) {
        return {(kappa - 1.0) + (kappa + 1.0) * decay, (1.0 - kappa) + (1.0 + kappa) * decay};
      }
      return {(kappa - 1.0) * decay + (kappa + 1.0), (1.0 - kappa) * decay + (1.0 + kappa)};
    }
  }
}

double parallel_curvature(SpaceForm sf, double kappa, double xi) {
  const auto [num, den] = parallel_terms(sf, kappa, xi);
  if (std::abs(den) <= kSingularDenominator * std::abs(num)) {
    throw SingularParallel("focal point reached: kappa=" + std::to_string(kappa) +
                           " xi=" + std::to_string(xi));
  }
  return num / den;
}

double parallel_denominator(SpaceForm sf, double kappa, double xi) {
  const double den = parallel_terms(sf, kappa, xi).denominator;
  if (sf.curvature() == -1 && std::abs(xi) > 1.0) {
    return den * 0.5 * std::exp(std::abs(xi));
  }
  return den;
}

double parallel_metric_factor(SpaceForm sf, double kappa, double xi) {
  const double den = parallel_denominator(sf, kappa, xi);
  return den * den;
}

bool has_focal_point(SpaceForm sf, double kappa) noexcept {
  switch (sf.curvature()) {
    case 1:
      return true;
    case 0:
      return kappa != 0.0;
    default:
      return std::abs(kappa) > 1.0;
  }
}

std::optional<double> focal_distance(SpaceForm sf, double kappa, int direction) {
  require_finite(kappa, "kappa");
  if (direction != 1 && direction != -1) {
    throw InvalidInput("direction must be +1 or -1");
  }
  if (!has_focal_point(sf, kappa)) {
    return std::nullopt;
  }
  double xi = 0.0;
  switch (sf.curvature()) {
    case 1: {
      const double theta = std::atan2(1.0, kappa);
      return direction > 0 ? theta : theta - std::numbers::pi;
    }
    case 0:
      xi = 1.0 / kappa;
      break;
    default:
      xi = std::atanh(1.0 / kappa);
      break;
  }
  if ((xi > 0.0) != (direction > 0)) {
    return std::nullopt;
  }
  return xi;
}

double ambient_inner(SpaceForm sf, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidInput("ambient vectors differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double term = a[i] * b[i];
    sum += (i == 0 && sf.curvature() == -1) ? -term : term;
  }
  return sum;
}

double frame_residual(SpaceForm sf, std::span<const double> point, std::span<const double> normal) {
  if (point.size() != normal.size() || point.empty()) {
    throw InvalidInput("point and normal must be non-empty and of equal length");
  }
  // Euclidean magnitudes set the scale at which the Lorentzian sums can cancel.
  double scale = 1.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    scale = std::max({scale, point[i] * point[i], normal[i] * normal[i]});
  }
  double residual = std::abs(ambient_inner(sf, normal, normal) - 1.0);
  if (sf.curvature() != 0) {
    residual = std::max(residual, std::abs(ambient_inner(sf, point, point) - sf.curvature()));
    residual = std::max(residual, std::abs(ambient_inner(sf, point, normal)));
  }
  return residual / scale;
}

void check_frame(SpaceForm sf, std::span<const double> point, std::span<const double> normal,
                 double tol) {
  const double residual = frame_residual(sf, point, normal);
  if (!(residual <= tol)) {
    throw InvalidFrame("ambient frame constraint violated, residual " + std::to_string(residual));
  }
}

AmbientFrame parallel_point(SpaceForm sf, std::span<const double> point,
                            std::span<const double> normal, double xi) {
  check_frame(sf, point, normal);
  const auto [c, s] = cs_eval(sf, xi);
  const double kbar = sf.curvature();
  AmbientFrame out{AmbientVector(point.size()), AmbientVector(point.size())};
  for (std::size_t i = 0; i < point.size(); ++i) {
    out.point[i] = c * point[i] + s * normal[i];
    out.normal[i] = -kbar * s * point[i] + c * normal[i];
  }
  return out;
}

}  // namespace isoflow
