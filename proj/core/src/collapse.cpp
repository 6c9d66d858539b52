#include "isoflow/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTotallyGeodesicTol = 1e-3;
constexpr double kConstantCurvatureTol = 1e-9;

struct Degeneration {
  std::size_t block;
  LimitKind kind;
  int focal_dimension;
};

// The block that reaches its focal offset first in the direction of motion sign(H).
std::optional<Degeneration> first_degeneration(const IsoparametricSurface& surface) {
  const double h = surface.mean_curvature();
  if (surface.is_minimal()) return std::nullopt;
  const int direction = h > 0.0 ? 1 : -1;
  const auto blocks = surface.blocks();
  std::vector<std::optional<double>> dist(blocks.size());
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    dist[i] = focal_distance(surface.space_form(), blocks[i].kappa, direction);
    if (dist[i] && (!best || std::abs(*dist[i]) < std::abs(*dist[*best]))) best = i;
  }
  if (!best) return std::nullopt;
  const double d = std::abs(*dist[*best]);
  int vanished = 0;
  std::size_t tied = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (dist[i] && std::abs(std::abs(*dist[i]) - d) <= 1e-9 * std::max(1.0, d)) {
      vanished += blocks[i].mult;
      ++tied;
    }
  }
  if (tied == blocks.size()) return Degeneration{*best, LimitKind::Point, 0};
  return Degeneration{*best, LimitKind::FocalSubmanifold, surface.dimension() - vanished};
}

double focal_residual(const IsoparametricSurface& surface, std::size_t block, double xi) {
  const CsPair cs = cs_eval(surface.space_form(), xi);
  return std::abs(cs.c / cs.s - surface.blocks()[block].kappa);
}

void fill_state(CollapseReport& r, const IsoparametricSurface& surface, double t, double xi) {
  r.t_eval = t;
  r.xi_eval = xi;
  r.metric_factors.clear();
  r.evolved_curvatures.clear();
  for (const auto& b : surface.blocks()) {
    r.metric_factors.push_back(parallel_metric_factor(surface.space_form(), b.kappa, xi));
    const double den = parallel_denominator(surface.space_form(), b.kappa, xi);
    r.evolved_curvatures.push_back(den == 0.0 ? kInf : parallel_curvature(surface.space_form(), b.kappa, xi));
  }
}

void classify_long_time(CollapseReport& r, const IsoparametricSurface& surface) {
  const auto blocks = surface.blocks();
  bool constant = true;
  bool vanishing = true;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double k = r.evolved_curvatures[i];
    if (std::abs(k - blocks[i].kappa) > kConstantCurvatureTol * std::max(1.0, std::abs(blocks[i].kappa)))
      constant = false;
    if (std::abs(k) >= kTotallyGeodesicTol) vanishing = false;
  }
  if (constant) {
    r.limit_kind = LimitKind::Eternal;
  } else if (vanishing) {
    r.limit_kind = LimitKind::TotallyGeodesic;
  } else {
    throw AnalysisIncomplete("flow neither collapsed nor settled by t = " + std::to_string(r.t_eval));
  }
}

CollapseReport finite_report(const IsoparametricSurface& surface, std::string engine, bool flipped,
                             double t_star, std::optional<std::size_t> numeric_block) {
  const auto deg = first_degeneration(surface);
  if (!deg) throw AnalysisIncomplete("finite collapse time but no block with a focal point");
  if (numeric_block && *numeric_block != deg->block)
    throw AnalysisIncomplete("integrator guard fired on block " + std::to_string(*numeric_block) +
                             ", expected block " + std::to_string(deg->block));
  CollapseReport r{};
  r.family = surface.family();
  r.engine = std::move(engine);
  r.flipped = flipped;
  r.t_star = t_star;
  r.degenerate_block = deg->block;
  r.focal_dimension = deg->focal_dimension;
  r.limit_kind = deg->kind;
  return r;
}

}  // namespace

std::string_view limit_kind_name(LimitKind kind) noexcept {
  switch (kind) {
    case LimitKind::Point: return "point";
    case LimitKind::FocalSubmanifold: return "focal submanifold";
    case LimitKind::TotallyGeodesic: return "totally geodesic limit";
    case LimitKind::Eternal: return "eternal";
  }
  return "unknown";
}

double limit_epsilon(double t_star) noexcept { return std::max(1e-8, 1e-8 * t_star); }

CollapseReport analyze(const IsoparametricSurface& surface, const ClosedFormProfile& profile, double horizon) {
  if (!profile.stationary() && profile.family() != surface.family())
    throw FamilyMismatch("profile family does not match the surface");
  if (std::isinf(profile.t_star())) {
    CollapseReport r{};
    r.family = surface.family();
    r.engine = "closed";
    r.flipped = profile.flipped();
    r.t_star = kInf;
    fill_state(r, surface, horizon, profile.xi(horizon));
    classify_long_time(r, surface);
    return r;
  }
  const double t_star = profile.t_star();
  CollapseReport r = finite_report(surface, "closed", profile.flipped(), t_star, std::nullopt);
  const double t = t_star - limit_epsilon(t_star);
  fill_state(r, surface, t, profile.xi(t));
  r.focal_residual = focal_residual(surface, *r.degenerate_block, r.xi_eval);
  r.focal_residual_limit = focal_residual(surface, *r.degenerate_block, profile.xi(t_star));
  return r;
}

CollapseReport analyze(const IsoparametricSurface& surface, const NumericProfile& profile, double horizon) {
  if (profile.termination() == Termination::HitSingularity) {
    const double t_star = profile.t_star().value();
    CollapseReport r = finite_report(surface, "ode", false, t_star, profile.degenerate_block());
    r.t_star_error = profile.t_star_error();
    const double t = std::min(t_star - limit_epsilon(t_star), profile.t_last());
    fill_state(r, surface, t, profile.xi(t));
    r.focal_residual = focal_residual(surface, *r.degenerate_block, r.xi_eval);
    return r;
  }
  if (profile.t_last() < horizon * (1.0 - 1e-12))
    throw AnalysisIncomplete("integration ended at t = " + std::to_string(profile.t_last()) +
                             " before the guard or the horizon " + std::to_string(horizon));
  CollapseReport r{};
  r.family = surface.family();
  r.engine = "ode";
  r.t_star = kInf;
  fill_state(r, surface, profile.t_last(), profile.xi_last());
  classify_long_time(r, surface);
  return r;
}

std::optional<int> focal_dimension_expected(const IsoparametricSurface& surface) {
  if (surface.is_minimal()) return std::nullopt;
  const auto oriented = surface.oriented().surface;
  const auto b = oriented.blocks();
  const int n = oriented.dimension();
  switch (oriented.family()) {
    case Family::EuclideanCylinder: return n - b[0].mult;
    case Family::HyperbolicCylinder: return b[1].mult;
    case Family::SphereProduct: return n - b[0].mult;
    case Family::SphereG3: return 2 * b[0].mult;
    case Family::SphereG4: return b[0].mult + 2 * b[1].mult;
    case Family::SphereG6: return 5 * b[0].mult;
    case Family::SphereUmbilic: return 0;
    case Family::HyperbolicUmbilic:
      if (b[0].kappa > 1.0) return 0;
      return std::nullopt;
    case Family::Horosphere:
    case Family::Minimal: return std::nullopt;
  }
  return std::nullopt;
}

namespace {
nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace

void to_json(nlohmann::json& j, const CollapseReport& r) {
  nlohmann::json factors = nlohmann::json::array();
  for (double f : r.metric_factors) factors.push_back(f);
  nlohmann::json curvatures = nlohmann::json::array();
  for (double k : r.evolved_curvatures) curvatures.push_back(finite_or_null(k));
  j = nlohmann::json{
      {"family", family_name(r.family)},
      {"engine", r.engine},
      {"flipped", r.flipped},
      {"t_star", finite_or_null(r.t_star)},
      {"t_star_error", optional_json(r.t_star_error)},
      {"degenerate_block", optional_json(r.degenerate_block)},
      {"focal_dimension", optional_json(r.focal_dimension)},
      {"limit_kind", limit_kind_name(r.limit_kind)},
      {"t_eval", r.t_eval},
      {"xi_eval", r.xi_eval},
      {"residuals",
       {{"focal", optional_json(r.focal_residual)},
        {"focal_limit", optional_json(r.focal_residual_limit)},
        {"metric_factors", factors}}},
      {"evolved_curvatures", curvatures},
  };
}

}  // namespace isoflow
