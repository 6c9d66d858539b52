#include "isoflow/flow_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// Gauss-Legendre nodes/weights on [-1, 1] (positive half).
constexpr std::array<double, 4> kGl8Nodes{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                          0.9602898564975363};
constexpr std::array<double, 4> kGl8Weights{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                            0.1012285362903763};
constexpr std::array<double, 8> kGl16Nodes{0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                           0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                           0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGl16Weights{0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                             0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                             0.0622535239386479, 0.0271524594117541};

struct Evaluation {
  double value = 0.0;
  double min_factor = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  bool crossed = false;  // some c - kappa s changed sign: beyond a focal point
};

Evaluation evaluate(const IsoparametricSurface& surface, double xi) {
  Evaluation ev;
  const auto blocks = surface.blocks();
  const SpaceForm sf = surface.space_form();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto [num, den] = parallel_terms(sf, blocks[i].kappa, xi);
    if (has_focal_point(sf, blocks[i].kappa)) {
      if (!(den > 0.0)) {
        ev.crossed = true;
        return ev;
      }
      const double factor = parallel_metric_factor(sf, blocks[i].kappa, xi);
      if (factor < ev.min_factor) {
        ev.min_factor = factor;
        ev.argmin = i;
      }
    }
    ev.value += blocks[i].mult * (num / den);
  }
  if (!std::isfinite(ev.value)) ev.crossed = true;
  return ev;
}

// 1/H(xi), which stays smooth through the focal point where H blows up.
double inverse_mean_curvature(const IsoparametricSurface& surface, double xi) {
  double h = 0.0;
  for (const auto& b : surface.blocks()) {
    const auto [num, den] = parallel_terms(surface.space_form(), b.kappa, xi);
    if (den == 0.0) return 0.0;
    h += b.mult * (num / den);
  }
  return 1.0 / h;
}

template <std::size_t N>
double gauss_legendre(const IsoparametricSurface& surface, double lo, double hi,
                      const std::array<double, N>& nodes, const std::array<double, N>& weights) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    sum += weights[k] * (inverse_mean_curvature(surface, mid - half * nodes[k]) +
                         inverse_mean_curvature(surface, mid + half * nodes[k]));
  }
  return half * sum;
}

struct FocalRefinement {
  double t_star;
  double error;
};

// Locate the zero of c - kappa s of the degenerate block by bisection in xi, then add
// the remaining time integral of dxi / H from the last accepted state to that zero.
FocalRefinement refine_focal_time(const IsoparametricSurface& surface, std::size_t block, double t_last,
                                  double xi_last, double xi_direction, double xi_error) {
  const SpaceForm sf = surface.space_form();
  const double kappa = surface.blocks()[block].kappa;
  auto den = [&](double xi) { return parallel_denominator(sf, kappa, xi); };

  const auto [num0, den0] = parallel_terms(sf, kappa, xi_last);
  double delta = std::abs(den0 / num0);
  if (!(delta > 0.0) || !std::isfinite(delta)) delta = 1e-12;
  double lo = xi_last;
  double hi = xi_last + xi_direction * 2.0 * delta;
  for (int k = 0; k < 200 && den(hi) > 0.0; ++k) {
    lo = hi;
    delta *= 2.0;
    hi = xi_last + xi_direction * 2.0 * delta;
  }
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (den(mid) > 0.0 ? lo : hi) = mid;
  }
  const double xi_focal = lo;

  const double tail8 = gauss_legendre(surface, xi_last, xi_focal, kGl8Nodes, kGl8Weights);
  const double tail16 = gauss_legendre(surface, xi_last, xi_focal, kGl16Nodes, kGl16Weights);
  const double inv_h = std::abs(inverse_mean_curvature(surface, xi_last));
  const double error = std::abs(tail16 - tail8) + (xi_error + std::abs(hi - lo)) * inv_h;
  return {t_last + tail16, error};
}

double initial_step(double f0, double span, const OdeOptions& opts) {
  double h = 0.01 * std::pow(opts.rel_tol, 0.2) / std::max(1.0, std::abs(f0));
  h = std::max(h, 1e-8);
  return std::min({h, opts.max_step, span});
}

}  // namespace

void OdeOptions::validate() const {
  if (!(rel_tol >= 1e-14) || !(abs_tol > 0.0) || !(max_step > 0.0) || !(singularity_guard > 0.0) ||
      !(horizon > 0.0) || max_steps == 0) {
    throw InvalidInput("ODE options must be positive with rel_tol >= 1e-14");
  }
}

double rhs(const IsoparametricSurface& surface, double xi, double singularity_guard) {
  const Evaluation ev = evaluate(surface, xi);
  if (ev.crossed || ev.min_factor < singularity_guard) {
    throw SingularParallel("right-hand side evaluated at a focal offset xi=" + std::to_string(xi));
  }
  return ev.value;
}

NumericProfile::NumericProfile(std::vector<Step> steps, Termination cause, std::optional<double> t_star,
                               std::optional<double> t_star_error, std::optional<std::size_t> degenerate_block)
    : steps_(std::move(steps)),
      cause_(cause),
      t_star_(t_star),
      t_star_error_(t_star_error),
      degenerate_(degenerate_block) {}

double NumericProfile::t_last() const noexcept { return steps_.empty() ? 0.0 : steps_.back().t1; }

double NumericProfile::xi_last() const noexcept {
  if (steps_.empty()) return 0.0;
  const Step& s = steps_.back();
  return s.r1 + s.r2;
}

std::vector<double> NumericProfile::sample_times() const {
  std::vector<double> times{0.0};
  for (const auto& s : steps_) times.push_back(s.t1);
  return times;
}

double NumericProfile::xi(double t) const {
  if (steps_.empty()) {
    if (t == 0.0) return 0.0;
    throw InvalidInput("time outside the integrated interval");
  }
  const bool forward = steps_.front().t1 > steps_.front().t0;
  const double end = steps_.back().t1;
  const double slack = 1e-14 * std::max(1.0, std::abs(end));
  if (forward ? (t < -slack || t > end + slack) : (t > slack || t < end - slack)) {
    throw InvalidInput("time " + std::to_string(t) + " outside the integrated interval");
  }
  t = forward ? std::clamp(t, 0.0, end) : std::clamp(t, end, 0.0);
  auto it = std::lower_bound(steps_.begin(), steps_.end(), t, [forward](const Step& s, double value) {
    return forward ? s.t1 < value : s.t1 > value;
  });
  if (it == steps_.end()) it = std::prev(steps_.end());
  const Step& s = *it;
  const double theta = (t - s.t0) / (s.t1 - s.t0);
  const double theta1 = 1.0 - theta;
  return s.r1 + theta * (s.r2 + theta1 * (s.r3 + theta * (s.r4 + theta1 * s.r5)));
}

NumericProfile integrate(const IsoparametricSurface& surface, double t_end, const OdeOptions& opts) {
  opts.validate();
  if (!std::isfinite(t_end)) throw InvalidInput("t_end must be finite");

  std::vector<NumericProfile::Step> steps;
  if (t_end == 0.0) return NumericProfile(std::move(steps), Termination::ReachedEnd, {}, {}, {});

  const double dir = t_end > 0.0 ? 1.0 : -1.0;
  double t = 0.0;
  double y = 0.0;
  Evaluation ev0 = evaluate(surface, y);
  double k1 = ev0.value;
  double h = dir * initial_step(k1, std::abs(t_end), opts);
  bool last_rejected = false;

  auto stage = [&](double xi, bool& bad) {
    if (bad) return 0.0;
    const Evaluation ev = evaluate(surface, xi);
    if (ev.crossed) {
      bad = true;
      return 0.0;
    }
    return ev.value;
  };

  for (std::size_t n = 0; n < opts.max_steps; ++n) {
    if (dir * (t + h - t_end) >= 0.0) h = t_end - t;
    const bool final_step = h == t_end - t;
    const double t_new = final_step ? t_end : t + h;
    const double min_step = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (std::abs(h) < min_step) {
      throw IntegrationFailure("step size underflow at t=" + std::to_string(t) + ", xi=" +
                               std::to_string(y) + " before the focal guard triggered");
    }

    bool bad = false;
    const double k2 = stage(y + h * a21 * k1, bad);
    const double k3 = stage(y + h * (a31 * k1 + a32 * k2), bad);
    const double k4 = stage(y + h * (a41 * k1 + a42 * k2 + a43 * k3), bad);
    const double k5 = stage(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), bad);
    const double k6 = stage(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), bad);
    const double y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    Evaluation ev1;
    if (!bad) {
      ev1 = evaluate(surface, y1);
      bad = ev1.crossed;
    }
    if (bad) {
      h *= 0.25;
      last_rejected = true;
      continue;
    }
    const double k7 = ev1.value;

    const double err_abs = std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(y), std::abs(y1));
    const double err = err_abs / scale;
    if (!(err <= 1.0)) {
      const double shrink = std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
      h *= shrink;
      last_rejected = true;
      continue;
    }

    NumericProfile::Step step{t, t_new, y, y1 - y, 0.0, 0.0, 0.0};
    step.r3 = h * k1 - step.r2;
    step.r4 = step.r2 - h * k7 - step.r3;
    step.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    steps.push_back(step);

    const double y_prev = y;
    t = t_new;
    y = y1;
    k1 = k7;

    if (ev1.min_factor < opts.singularity_guard) {
      const double xi_direction = y >= y_prev ? 1.0 : -1.0;
      const double xi_error = 10.0 * static_cast<double>(steps.size()) * (opts.rel_tol * std::abs(y) + opts.abs_tol);
      const FocalRefinement ref = refine_focal_time(surface, ev1.argmin, t, y, xi_direction, xi_error);
      return NumericProfile(std::move(steps), Termination::HitSingularity, ref.t_star, ref.error, ev1.argmin);
    }
    if (final_step) {
      return NumericProfile(std::move(steps), Termination::ReachedEnd, {}, {}, {});
    }

    double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    grow = std::clamp(grow, 0.2, 5.0);
    if (last_rejected) grow = std::min(grow, 1.0);
    last_rejected = false;
    h = dir * std::min(std::abs(h) * grow, opts.max_step);
  }
  throw IntegrationFailure("step budget of " + std::to_string(opts.max_steps) + " exhausted at t=" +
                           std::to_string(t));
}

TStarEstimate estimate_tstar(const IsoparametricSurface& surface, const OdeOptions& opts) {
  const NumericProfile profile = integrate(surface, opts.horizon, opts);
  if (profile.termination() == Termination::HitSingularity) {
    return {*profile.t_star(), *profile.t_star_error(), profile.degenerate_block()};
  }
  // Reaching the horizon with a finite speed means no collapse.
  const double speed = rhs(surface, profile.xi_last(), 0.0);
  if (!std::isfinite(speed)) {
    throw IntegrationFailure("flow speed is unbounded at the horizon");
  }
  return {std::numeric_limits<double>::infinity(), 0.0, std::nullopt};
}

}  // namespace isoflow
