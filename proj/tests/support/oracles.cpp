#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Gauss-Kronrod 7-15 nodes on [-1, 1].
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

std::pair<double, double> gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double f1 = f(c - h * xgk[j]);
    const double f2 = f(c + h * xgk[j]);
    kron += wgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, int depth = 0) {
  const auto [value, err] = gk15(f, a, b);
  if (err <= tol || depth > 40) return value;
  const double m = 0.5 * (a + b);
  return integrate(f, a, m, 0.5 * tol, depth + 1) + integrate(f, m, b, 0.5 * tol, depth + 1);
}

double c_of(int kbar, double x) { return kbar == 0 ? 1.0 : kbar > 0 ? std::cos(x) : std::cosh(x); }
double s_of(int kbar, double x) { return kbar == 0 ? x : kbar > 0 ? std::sin(x) : std::sinh(x); }

double total(const Blocks& blocks) {
  double h = 0.0;
  for (const auto& [k, m] : blocks) h += m * k;
  return h;
}

}  // namespace

double mean_curvature(int kbar, const Blocks& blocks, double xi) {
  const double c = c_of(kbar, xi);
  const double s = s_of(kbar, xi);
  double h = 0.0;
  for (const auto& [k, m] : blocks) h += m * (kbar * s + k * c) / (c - k * s);
  return h;
}

double focal_offset(int kbar, double kappa, int dir) {
  const double k = dir > 0 ? kappa : -kappa;
  double d = kNaN;
  if (kbar == 0 && k > 0) d = 1.0 / k;
  if (kbar == 1) d = k > 0 ? std::atan(1.0 / k) : k == 0 ? M_PI / 2 : M_PI + std::atan(1.0 / k);
  if (kbar == -1 && k > 1) d = std::atanh(1.0 / k);
  return dir > 0 ? d : -d;
}

double time_of_offset(int kbar, const Blocks& blocks, double xi) {
  if (xi == 0.0) return 0.0;
  const auto inv = [&](double z) { return 1.0 / mean_curvature(kbar, blocks, z); };
  return integrate(inv, 0.0, xi, 1e-15 * std::max(1.0, std::abs(xi)));
}

double collapse_time(int kbar, const Blocks& blocks) {
  const int dir = total(blocks) > 0 ? 1 : -1;
  double best = kNaN;
  for (const auto& [k, m] : blocks) {
    const double d = focal_offset(kbar, k, dir);
    if (!std::isnan(d) && (std::isnan(best) || std::abs(d) < std::abs(best))) best = d;
  }
  if (std::isnan(best)) return std::numeric_limits<double>::infinity();
  return time_of_offset(kbar, blocks, best);
}

double offset_at(int kbar, const Blocks& blocks, double t) {
  if (t == 0.0) return 0.0;
  const int dir = total(blocks) > 0 ? 1 : -1;
  double limit = std::numeric_limits<double>::infinity();
  for (const auto& [k, m] : blocks) {
    const double d = focal_offset(kbar, k, dir);
    if (!std::isnan(d)) limit = std::min(limit, std::abs(d));
  }
  // Grow the bracket until t(xi) exceeds t or H stops pushing outward.
  double lo = 0.0;
  double hi = std::isfinite(limit) ? limit : 1.0;
  if (!std::isfinite(limit)) {
    while (dir * mean_curvature(kbar, blocks, dir * hi) > 0 && time_of_offset(kbar, blocks, dir * hi) < t)
      hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double h = dir * mean_curvature(kbar, blocks, dir * mid);
    if (h > 0 && time_of_offset(kbar, blocks, dir * mid) < t)
      lo = mid;
    else
      hi = mid;
  }
  return dir * 0.5 * (lo + hi);
}

double inner(int kbar, const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (kbar < 0 && i == 0 ? -1.0 : 1.0) * a[i] * b[i];
  return sum;
}

double frame_defect(int kbar, const std::vector<double>& f, const std::vector<double>& n) {
  const double ff = std::max(1.0, inner(0, f, f));
  const double nn = std::max(1.0, inner(0, n, n));
  double d = std::abs(inner(kbar, n, n) - 1.0) / nn;
  if (kbar != 0) {
    d = std::max(d, std::abs(inner(kbar, f, n)) / std::sqrt(ff * nn));
    d = std::max(d, std::abs(inner(kbar, f, f) - kbar) / ff);
  }
  return d;
}

}  // namespace oracle
