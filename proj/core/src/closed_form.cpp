#include "isoflow/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isoflow/errors.hpp"

namespace isoflow {

double AnglePair::identity_residual() const noexcept {
  const double c2 = cos_value * cos_value;
  const double s2 = sin_value * sin_value;
  if (hyperbolic) return std::abs(c2 - s2 - 1.0) / std::max(1.0, c2);
  return std::abs(c2 + s2 - 1.0);
}

namespace detail {

class ProfileResolver {
 public:
  struct Eval {
    double xi;  // oriented offset
    std::optional<AnglePair> pair;
    std::optional<double> q;
  };

  ProfileResolver(Family family, bool flipped, double t_min, double t_star,
                  std::vector<std::pair<std::string, double>> params)
      : family_(family), flipped_(flipped), t_min_(t_min), t_star_(t_star), params_(std::move(params)) {}
  virtual ~ProfileResolver() = default;

  [[nodiscard]] virtual Eval evaluate(double t) const = 0;
  [[nodiscard]] virtual bool stationary() const noexcept { return false; }
  /// At t* the square root in every closed form vanishes exactly.
  [[nodiscard]] bool at_limit(double t) const noexcept { return t >= t_star_; }

  Family family_;
  bool flipped_;
  double t_min_;
  double t_star_;
  std::vector<std::pair<std::string, double>> params_;
};

}  // namespace detail

namespace {

using detail::ProfileResolver;
constexpr double kInf = std::numeric_limits<double>::infinity();

double root_clamped(double v) { return std::sqrt(std::max(v, 0.0)); }

class Stationary final : public ProfileResolver {
 public:
  using ProfileResolver::ProfileResolver;
  Eval evaluate(double) const override { return {0.0, std::nullopt, std::nullopt}; }
  bool stationary() const noexcept override { return true; }
};

class Euclidean final : public ProfileResolver {
 public:
  Euclidean(bool flipped, int m, double kappa)
      : ProfileResolver(Family::EuclideanCylinder, flipped, -kInf, 1.0 / (2.0 * m * kappa * kappa),
                        {{"kappa", kappa}, {"m", m}}),
        m_(m), kappa_(kappa) {}
  Eval evaluate(double t) const override {
    const double root = at_limit(t) ? 0.0 : root_clamped(1.0 - 2.0 * m_ * kappa_ * kappa_ * t);
    return {2.0 * m_ * kappa_ * t / (1.0 + root), std::nullopt, std::nullopt};
  }

 private:
  int m_;
  double kappa_;
};

class Horosphere final : public ProfileResolver {
 public:
  Horosphere(bool flipped, int n)
      : ProfileResolver(Family::Horosphere, flipped, -kInf, kInf, {{"kappa", 1.0}, {"n", n}}), n_(n) {}
  Eval evaluate(double t) const override { return {n_ * t, std::nullopt, std::nullopt}; }

 private:
  int n_;
};

class HyperbolicUmbilic final : public ProfileResolver {
 public:
  HyperbolicUmbilic(bool flipped, int n, double kappa)
      : ProfileResolver(Family::HyperbolicUmbilic, flipped, -kInf,
                        kappa > 1.0 ? std::log(kappa * kappa / (kappa * kappa - 1.0)) / (2.0 * n) : kInf,
                        {{"kappa", kappa}, {"n", n}}),
        n_(n), kappa_(kappa) {}
  Eval evaluate(double t) const override {
    const double k2 = kappa_ * kappa_;
    const double e = std::exp(-n_ * t);
    const double q = 1.0 - k2 + k2 * e * e;
    const double r = at_limit(t) ? 0.0 : root_clamped(q);
    const double ch = (k2 * e - r) / (k2 - 1.0);
    const double sh = kappa_ * (e - r) / (k2 - 1.0);
    return {std::asinh(sh), AnglePair{1, true, ch, sh}, q};
  }

 private:
  int n_;
  double kappa_;
};

class HyperbolicCylinder final : public ProfileResolver {
 public:
  HyperbolicCylinder(bool flipped, int m1, int m2, double k1, double k2)
      : ProfileResolver(Family::HyperbolicCylinder, flipped, -kInf,
                        std::log((m1 * k1 * k1 + m2) / (m1 * (k1 * k1 - 1.0))) / (2.0 * (m1 + m2)),
                        {}),
        n_(m1 + m2), a_(k1 + k2), b_(-static_cast<double>(m1 - m2) / (m1 + m2) * (k1 - k2)) {
    params_ = {{"a", a_}, {"b", b_}, {"kappa1", k1}, {"kappa2", k2}, {"m1", m1}, {"m2", m2}};
  }
  Eval evaluate(double t) const override {
    const double ell = (a_ - b_) * std::exp(-2.0 * n_ * t) + b_;
    const double q = ell * ell - a_ * a_ + 4.0;
    const double r = at_limit(t) ? 0.0 : root_clamped(q);
    const double den = a_ * a_ - 4.0;
    const double ch = (a_ * ell - 2.0 * r) / den;
    const double sh = (2.0 * ell - a_ * r) / den;
    return {0.5 * std::asinh(sh), AnglePair{2, true, ch, sh}, q};
  }

 private:
  int n_;
  double a_, b_;
};

class SphereUmbilic final : public ProfileResolver {
 public:
  SphereUmbilic(bool flipped, int n, double kappa)
      : ProfileResolver(Family::SphereUmbilic, flipped, -kInf,
                        std::log((kappa * kappa + 1.0) / (kappa * kappa)) / (2.0 * n),
                        {{"kappa", kappa}, {"n", n}}),
        n_(n), kappa_(kappa) {}
  Eval evaluate(double t) const override {
    const double k2 = kappa_ * kappa_;
    const double e = std::exp(n_ * t);
    const double q = k2 + 1.0 - k2 * e * e;
    const double r = at_limit(t) ? 0.0 : root_clamped(q);
    const double c = (k2 * e + r) / (k2 + 1.0);
    const double s = kappa_ * (e - r) / (k2 + 1.0);
    return {std::atan2(s, c), AnglePair{1, false, c, s}, q};
  }

 private:
  int n_;
  double kappa_;
};

// g = 2 and g = 4 share the form
//   cos g xi = (a q + g R) / (a^2 + g^2),  sin g xi = (g q - a R) / (a^2 + g^2),
//   q = (a + b) e^{g n t} - b,  R = sqrt(a^2 + g^2 - q^2).
class LinearQ final : public ProfileResolver {
 public:
  LinearQ(Family family, bool flipped, int g, int n, double a, double b, double t_star,
          std::vector<std::pair<std::string, double>> params)
      : ProfileResolver(family, flipped, -kInf, t_star, std::move(params)), g_(g), n_(n), a_(a), b_(b) {}
  Eval evaluate(double t) const override {
    const double g = g_;
    const double q = (a_ + b_) * std::exp(g * n_ * t) - b_;
    const double w = a_ * a_ + g * g;
    const double r = at_limit(t) ? 0.0 : root_clamped(w - q * q);
    const double c = (a_ * q + g * r) / w;
    const double s = (g * q - a_ * r) / w;
    return {std::atan2(s, c) / g, AnglePair{g_, false, c, s}, q};
  }

 private:
  int g_, n_;
  double a_, b_;
};

// g = 3 and g = 6 (equal multiplicities m) share the form
//   cos g xi = (a^2 E + g sqrt(q)) / (a^2 + g^2),  sin g xi = a (g E - sqrt(q)) / (a^2 + g^2),
//   E = e^{g^2 m t},  q = a^2 + g^2 - a^2 E^2.
class EqualMult final : public ProfileResolver {
 public:
  EqualMult(Family family, bool flipped, int g, int m, double a)
      : ProfileResolver(family, flipped, -kInf,
                        std::log1p(g * g / (a * a)) / (2.0 * g * g * m), {{"a", a}, {"m", m}}),
        g_(g), m_(m), a_(a) {}
  Eval evaluate(double t) const override {
    const double g = g_;
    const double a2 = a_ * a_;
    const double e = std::exp(g * g * m_ * t);
    const double q = a2 + g * g - a2 * e * e;
    const double r = at_limit(t) ? 0.0 : root_clamped(q);
    const double w = a2 + g * g;
    const double c = (a2 * e + g * r) / w;
    const double s = a_ * (g * e - r) / w;
    return {std::atan2(s, c) / g, AnglePair{g_, false, c, s}, q};
  }

 private:
  int g_, m_;
  double a_;
};

void require_family(const IsoparametricSurface& surface, Family expected) {
  if (surface.family() == expected) return;
  std::ostringstream msg;
  msg << "surface tagged '" << family_name(surface.family()) << "' passed to the '" << family_name(expected)
      << "' resolver";
  throw FamilyMismatch(msg.str());
}

ClosedFormProfile stationary_profile(const IsoparametricSurface& surface) {
  return ClosedFormProfile(std::make_shared<Stationary>(surface.family(), false, -kInf, kInf,
                                                        std::vector<std::pair<std::string, double>>{}));
}

template <typename Build>
ClosedFormProfile resolve(const IsoparametricSurface& surface, Family expected, Build build) {
  if (surface.is_minimal()) return stationary_profile(surface);
  require_family(surface, expected);
  const auto oriented = surface.oriented();
  return ClosedFormProfile(build(oriented.surface, oriented.flipped));
}

}  // namespace

ClosedFormProfile::ClosedFormProfile(std::shared_ptr<const detail::ProfileResolver> resolver)
    : resolver_(std::move(resolver)) {}

Family ClosedFormProfile::family() const noexcept { return resolver_->family_; }
bool ClosedFormProfile::flipped() const noexcept { return resolver_->flipped_; }
bool ClosedFormProfile::stationary() const noexcept { return resolver_->stationary(); }
double ClosedFormProfile::t_min() const noexcept { return resolver_->t_min_; }
double ClosedFormProfile::t_star() const noexcept { return resolver_->t_star_; }

const std::vector<std::pair<std::string, double>>& ClosedFormProfile::parameters() const noexcept {
  return resolver_->params_;
}

std::optional<double> ClosedFormProfile::parameter(std::string_view name) const {
  for (const auto& [key, value] : resolver_->params_)
    if (key == name) return value;
  return std::nullopt;
}

namespace {
void check_time(const ClosedFormProfile& p, double t) {
  if (!std::isfinite(t) || t < p.t_min() || t > p.t_star()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "time " << t << " outside the closed-form domain [" << p.t_min() << ", " << p.t_star() << "]";
    throw InvalidInput(msg.str());
  }
}
}  // namespace

double ClosedFormProfile::xi(double t) const {
  check_time(*this, t);
  const double xi = resolver_->evaluate(t).xi;
  return flipped() ? 0.0 - xi : xi;
}

std::optional<AnglePair> ClosedFormProfile::pair(double t) const {
  check_time(*this, t);
  return resolver_->evaluate(t).pair;
}

std::optional<double> ClosedFormProfile::q(double t) const {
  check_time(*this, t);
  return resolver_->evaluate(t).q;
}

ClosedFormProfile profile_euclidean(const IsoparametricSurface& surface) {
  return resolve(surface, Family::EuclideanCylinder, [](const IsoparametricSurface& s, bool flipped) {
    const auto& b = s.blocks().front();
    return std::make_shared<Euclidean>(flipped, b.mult, b.kappa);
  });
}

ClosedFormProfile profile_horosphere(const IsoparametricSurface& surface) {
  return resolve(surface, Family::Horosphere, [](const IsoparametricSurface& s, bool flipped) {
    return std::make_shared<Horosphere>(flipped, s.dimension());
  });
}

ClosedFormProfile profile_hyperbolic_umbilic(const IsoparametricSurface& surface) {
  return resolve(surface, Family::HyperbolicUmbilic, [](const IsoparametricSurface& s, bool flipped) {
    return std::make_shared<HyperbolicUmbilic>(flipped, s.dimension(), s.blocks().front().kappa);
  });
}

ClosedFormProfile profile_hyperbolic_cylinder(const IsoparametricSurface& surface) {
  return resolve(surface, Family::HyperbolicCylinder, [](const IsoparametricSurface& s, bool flipped) {
    const auto b = s.blocks();
    return std::make_shared<HyperbolicCylinder>(flipped, b[0].mult, b[1].mult, b[0].kappa, b[1].kappa);
  });
}

ClosedFormProfile profile_sphere_umbilic(const IsoparametricSurface& surface) {
  return resolve(surface, Family::SphereUmbilic, [](const IsoparametricSurface& s, bool flipped) {
    return std::make_shared<SphereUmbilic>(flipped, s.dimension(), s.blocks().front().kappa);
  });
}

ClosedFormProfile profile_sphere_g2(const IsoparametricSurface& surface) {
  return resolve(surface, Family::SphereProduct, [](const IsoparametricSurface& s, bool flipped) {
    const auto b = s.blocks();
    const int l = b[0].mult;
    const int n = s.dimension();
    const double k1 = b[0].kappa;
    const double k2 = b[1].kappa;
    const double a = k1 + k2;
    const double bb = -static_cast<double>(n - 2 * l) / n * (k1 - k2);
    const double lk = l * (k1 * k1 + 1.0);
    const double t_star = std::log(lk / (lk - n)) / (2.0 * n);
    return std::make_shared<LinearQ>(
        Family::SphereProduct, flipped, 2, n, a, bb, t_star,
        std::vector<std::pair<std::string, double>>{
            {"a", a}, {"b", bb}, {"kappa1", k1}, {"kappa2", k2}, {"l", l}, {"n", n}});
  });
}

ClosedFormProfile profile_sphere_g3(const IsoparametricSurface& surface) {
  return resolve(surface, Family::SphereG3, [](const IsoparametricSurface& s, bool flipped) {
    const double a = sphere_curvature_sum(3, s.blocks().front().kappa);
    return std::make_shared<EqualMult>(Family::SphereG3, flipped, 3, s.blocks().front().mult, a);
  });
}

ClosedFormProfile profile_sphere_g4(const IsoparametricSurface& surface) {
  return resolve(surface, Family::SphereG4, [](const IsoparametricSurface& s, bool flipped) {
    const auto blocks = s.blocks();
    const int m1 = blocks[0].mult;
    const int m2 = blocks[1].mult;
    const int n = s.dimension();
    const double k1 = blocks[0].kappa;
    const double k2 = k1 * k1;
    const double a = sphere_curvature_sum(4, k1);
    const double b = 2.0 * (m1 - m2) * (k2 + 1.0) * (k2 + 1.0) / (n * k1 * (k2 - 1.0));
    if (!(a + b > 0.0)) throw InvalidSurface("g = 4 data with a + b <= 0 after orientation");
    const double t_star = std::log((b + std::sqrt(a * a + 16.0)) / (a + b)) / (4.0 * n);
    return std::make_shared<LinearQ>(
        Family::SphereG4, flipped, 4, n, a, b, t_star,
        std::vector<std::pair<std::string, double>>{{"a", a}, {"b", b}, {"kappa1", k1}, {"m1", m1}, {"m2", m2}});
  });
}

ClosedFormProfile profile_sphere_g6(const IsoparametricSurface& surface) {
  return resolve(surface, Family::SphereG6, [](const IsoparametricSurface& s, bool flipped) {
    const double a = sphere_curvature_sum(6, s.blocks().front().kappa);
    return std::make_shared<EqualMult>(Family::SphereG6, flipped, 6, s.blocks().front().mult, a);
  });
}

ClosedFormProfile resolve_profile(const IsoparametricSurface& surface) {
  if (surface.is_minimal()) return stationary_profile(surface);
  switch (surface.family()) {
    case Family::EuclideanCylinder: return profile_euclidean(surface);
    case Family::Horosphere: return profile_horosphere(surface);
    case Family::HyperbolicUmbilic: return profile_hyperbolic_umbilic(surface);
    case Family::HyperbolicCylinder: return profile_hyperbolic_cylinder(surface);
    case Family::SphereUmbilic: return profile_sphere_umbilic(surface);
    case Family::SphereProduct: return profile_sphere_g2(surface);
    case Family::SphereG3: return profile_sphere_g3(surface);
    case Family::SphereG4: return profile_sphere_g4(surface);
    case Family::SphereG6: return profile_sphere_g6(surface);
    case Family::Minimal: break;
  }
  throw FamilyMismatch("surface tagged 'minimal' has nonzero mean curvature");
}

}  // namespace isoflow
