#include "isoflow_cli/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <isoflow/closed_form.hpp>
#include <isoflow/collapse.hpp>
#include <isoflow/embedding.hpp>
#include <isoflow/errors.hpp>

namespace isoflow::cli {

namespace {

constexpr std::array<std::string_view, 8> kChecks{
    "xi-zero", "pythagorean", "ode-residual", "oracle", "tstar", "focal-dimension", "focal-condition", "embedding"};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string label(std::string_view family, std::initializer_list<std::pair<const char*, double>> params) {
  std::ostringstream os;
  os << family << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

// Forward window on which the flow is compared: [0, 0.99 t*], or [0, 10] when eternal.
double window(const ClosedFormProfile& p) { return std::isinf(p.t_star()) ? 10.0 : 0.99 * p.t_star(); }

CheckResult make(std::string_view check, const NamedSurface& inst, double value, double tol, std::string note = {}) {
  return {std::string(check), inst.label, value <= tol, value, tol, std::move(note)};
}

double fd_derivative(const ClosedFormProfile& p, double t, double h) {
  return (-p.xi(t + 2 * h) + 8 * p.xi(t + h) - 8 * p.xi(t - h) + p.xi(t - 2 * h)) / (12 * h);
}

}  // namespace

std::span<const std::string_view> check_names() noexcept { return kChecks; }

std::vector<NamedSurface> verification_grid() {
  std::vector<NamedSurface> g;
  auto add = [&g](std::string l, IsoparametricSurface s) { g.push_back({std::move(l), std::move(s)}); };

  for (auto [m, n, k] : {std::tuple{2, 2, 1.0}, {1, 3, 2.0}, {1, 1, 0.5}, {3, 3, -1.5}, {2, 4, 0.7}, {1, 2, -3.0}})
    add(label("euclidean-cylinder", {{"m", m}, {"n", n}, {"kappa", k}}), make_euclidean_cylinder(m, n, k));
  for (auto [n, k] : {std::pair{1, 1.0}, {2, -1.0}, {3, 1.0}, {4, -1.0}})
    add(label("horosphere", {{"n", n}, {"kappa", k}}), make_horosphere(n, k));
  for (auto [n, k] : {std::pair{2, 2.0}, {2, 0.5}, {3, -1.5}, {1, 0.9}, {4, -0.3}, {2, 5.0}})
    add(label("hyperbolic-umbilic", {{"n", n}, {"kappa", k}}), make_hyperbolic_umbilic(n, k));
  for (auto [m1, m2, k] : {std::tuple{1, 1, 2.0}, {2, 3, 1.5}, {3, 1, 1.2}})
    add(label("hyperbolic-cylinder", {{"m1", m1}, {"m2", m2}, {"kappa1", k}}), make_hyperbolic_cylinder(m1, m2, k));
  for (auto [m1, m2, k] : {std::tuple{1, 2, 3.0}, {2, 2, 2.5}})
    add(label("hyperbolic-cylinder-flipped", {{"m1", m1}, {"m2", m2}, {"kappa1", k}}),
        make_hyperbolic_cylinder(m1, m2, k).flipped());
  for (auto [n, k] : {std::pair{2, 1.0}, {1, 0.3}, {3, -2.0}, {2, -0.5}, {5, 4.0}})
    add(label("sphere-umbilic", {{"n", n}, {"kappa", k}}), make_sphere_umbilic(n, k));
  for (auto [l, n, k] : {std::tuple{1, 2, 2.0}, {1, 3, 2.0}, {2, 3, 1.5}, {1, 4, 3.0}, {3, 4, 1.0}})
    add(label("sphere-product", {{"l", l}, {"n", n}, {"kappa1", k}}), make_sphere_product(l, n, k));
  add(label("sphere-product-flipped", {{"l", 1}, {"n", 2}, {"kappa1", 2}}), make_sphere_product(1, 2, 2.0).flipped());
  for (auto [m, k] : {std::pair{1, 2.0}, {2, 3.0}, {4, 2.5}, {8, 1.9}, {1, 1.0}}) {
    const std::array mults{m};
    add(label("sphere-g3", {{"m", m}, {"kappa1", k}}), sphere_from_kappa1(3, k, mults));
  }
  for (auto [m1, m2, k] : {std::tuple{1, 1, 3.0}, {1, 1, 2.0}, {1, 2, 3.0}, {2, 1, 1.5}, {3, 4, 2.2}, {1, 6, 4.0}}) {
    const std::array mults{m1, m2};
    add(label("sphere-g4", {{"m1", m1}, {"m2", m2}, {"kappa1", k}}), sphere_from_kappa1(4, k, mults));
  }
  for (auto [m, k] : {std::pair{1, 2.0}, {1, 3.0}, {2, 4.0}, {1, 5.0}, {2, 1.9}}) {
    const std::array mults{m};
    add(label("sphere-g6", {{"m", m}, {"kappa1", k}}), sphere_from_kappa1(6, k, mults));
  }
  add("minimal(clifford,l=1,n=2)", make_minimal(SpaceForm::sphere(), {{1.0, 1}, {-1.0, 1}}));
  add("minimal(sphere-g3,m=1)",
      make_minimal(SpaceForm::sphere(), {{std::sqrt(3.0), 1}, {0.0, 1}, {-std::sqrt(3.0), 1}}));
  add("minimal(equator,n=3)", make_minimal(SpaceForm::sphere(), {{0.0, 3}}));
  add("minimal(totally-geodesic,n=2)", make_minimal(SpaceForm::hyperbolic(), {{0.0, 2}}));
  return g;
}

std::vector<CheckResult> run_checks(const NamedSurface& inst, std::span<const std::string> checks,
                                    const OdeOptions& opts) {
  for (const auto& c : checks)
    if (std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end())
      throw InvalidInput("unknown check '" + c + "'");
  auto wanted = [&](std::string_view name) {
    return checks.empty() || std::find(checks.begin(), checks.end(), name) != checks.end();
  };

  const IsoparametricSurface& s = inst.surface;
  const ClosedFormProfile p = resolve_profile(s);
  const double T = window(p);
  const bool collapses = std::isfinite(p.t_star());
  std::vector<CheckResult> out;

  if (wanted("xi-zero")) out.push_back(make("xi-zero", inst, std::abs(p.xi(0.0)), 1e-12));

  if (wanted("pythagorean") && p.pair(0.0)) {
    const double end = collapses ? p.t_star() : T;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, p.pair(end * (i / 999.0))->identity_residual());
    out.push_back(make("pythagorean", inst, worst, 1e-10));
  }

  if (wanted("ode-residual")) {
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = T * i / 101.0;
      const double room = collapses ? p.t_star() - t : T;
      const double h = 1e-3 * std::min({T, room, t});
      const double f = rhs(s, p.xi(t), 0.0);
      worst = std::max(worst, std::abs(fd_derivative(p, t, h) - f) / std::max(1.0, std::abs(f)));
    }
    out.push_back(make("ode-residual", inst, worst, 1e-6));
  }

  if (wanted("oracle")) {
    const NumericProfile np = integrate(s, T, opts);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = T * (i / 1000.0);
      worst = std::max(worst, std::abs(p.xi(t) - np.xi(t)));
    }
    out.push_back(make("oracle", inst, worst, 1e-8));
  }

  if (wanted("tstar")) {
    const TStarEstimate est = estimate_tstar(s, opts);
    double diff = 0.0;
    if (std::isinf(est.t_star) != !collapses)
      diff = std::numeric_limits<double>::infinity();
    else if (collapses)
      diff = std::abs(est.t_star - p.t_star());
    std::ostringstream note;
    note.precision(12);
    note << "closed " << p.t_star() << ", ode " << est.t_star;
    out.push_back(make("tstar", inst, diff, 1e-7, note.str()));
  }

  if (wanted("focal-dimension")) {
    const CollapseReport closed = analyze(s, p, opts.horizon);
    const CollapseReport ode = analyze(s, integrate(s, opts.horizon, opts), opts.horizon);
    const auto expected = focal_dimension_expected(s);
    bool ok = closed.focal_dimension == expected && ode.focal_dimension == expected &&
              closed.limit_kind == ode.limit_kind;
    if (!expected) {
      const LimitKind want = s.family() == Family::HyperbolicUmbilic && !s.is_minimal() ? LimitKind::TotallyGeodesic
                                                                                          : LimitKind::Eternal;
      ok = ok && closed.limit_kind == want;
    }
    std::string note(limit_kind_name(closed.limit_kind));
    if (closed.focal_dimension) note += ", dimension " + std::to_string(*closed.focal_dimension);
    out.push_back(make("focal-dimension", inst, ok ? 0.0 : 1.0, 0.0, note));
  }

  if (wanted("focal-condition") && collapses) {
    const CollapseReport r = analyze(s, p, opts.horizon);
    std::ostringstream note;
    note.precision(3);
    note << "at t*-eps: " << r.focal_residual.value_or(kNaN);
    out.push_back(make("focal-condition", inst, r.focal_residual_limit.value_or(kNaN), 1e-6, note.str()));
  }

  if (wanted("embedding") && has_embedding(s)) {
    const std::array<int, 1> res{6};
    double worst = 0.0;
    for (double f : {0.0, 0.25, 0.5, 0.9, 1.0}) worst = std::max(worst, sample(s, res, f * T, p).max_frame_residual());
    out.push_back(make("embedding", inst, worst, 1e-10));
  }
  return out;
}

}  // namespace isoflow::cli
