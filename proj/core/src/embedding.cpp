#include "isoflow/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

enum class Piece { Sphere, Flat, Hyperbolic };

struct Layout {
  std::vector<std::pair<Piece, int>> pieces;
};

// Value of parameter `k` (0-based) of a piece with `dim` parameters at grid index `idx`.
double param_value(Piece piece, int k, int dim, int idx, int res) {
  if (piece == Piece::Sphere) {
    if (k == dim - 1) return 2.0 * std::numbers::pi * idx / res;
    if (res == 1) return 0.5 * std::numbers::pi;
    return std::numbers::pi * idx / (res - 1);
  }
  if (res == 1) return 0.0;
  return -1.0 + 2.0 * idx / (res - 1);
}

// Unit vector of S^k in R^{k+1} from hyperspherical angles.
AmbientVector sphere_point(std::span<const double> angles) {
  const std::size_t k = angles.size();
  AmbientVector x(k + 1);
  double prod = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = prod * std::cos(angles[i]);
    prod *= std::sin(angles[i]);
  }
  x[k] = prod;
  return x;
}

// Point (sqrt(1 + |v|^2), v) of the hyperboloid H^k in R^{1,k}.
AmbientVector hyperboloid_point(std::span<const double> v) {
  AmbientVector y(v.size() + 1);
  double r2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    y[i + 1] = v[i];
    r2 += v[i] * v[i];
  }
  y[0] = std::sqrt(1.0 + r2);
  return y;
}

AmbientVector piece_point(Piece piece, std::span<const double> params) {
  switch (piece) {
    case Piece::Sphere: return sphere_point(params);
    case Piece::Hyperbolic: return hyperboloid_point(params);
    case Piece::Flat: break;
  }
  return AmbientVector(params.begin(), params.end());
}

AmbientVector concat(const AmbientVector& a, const AmbientVector& b) {
  AmbientVector out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

AmbientVector scaled(const AmbientVector& v, double k) {
  AmbientVector out(v);
  for (double& x : out) x *= k;
  return out;
}

enum class Shape {
  EuclideanSphere,
  EuclideanCylinder,
  Hyperplane,
  SphereUmbilic,
  SphereProduct,
  Horosphere,
  GeodesicSphere,
  Equidistant,
  HyperbolicCylinder,
};

std::optional<Shape> shape_of(const IsoparametricSurface& s) {
  const auto b = s.blocks();
  switch (s.space_form().curvature()) {
    case 0:
      if (b.size() == 2) return Shape::EuclideanCylinder;
      return b[0].kappa == 0.0 ? Shape::Hyperplane : Shape::EuclideanSphere;
    case 1:
      if (b.size() == 1) return Shape::SphereUmbilic;
      if (b.size() == 2) return Shape::SphereProduct;
      return std::nullopt;
    default:
      if (b.size() == 2) return Shape::HyperbolicCylinder;
      if (std::abs(b[0].kappa) == 1.0) return Shape::Horosphere;
      return std::abs(b[0].kappa) > 1.0 ? Shape::GeodesicSphere : Shape::Equidistant;
  }
}

Layout layout_of(Shape shape, const IsoparametricSurface& s) {
  const auto b = s.blocks();
  const int n = s.dimension();
  switch (shape) {
    case Shape::EuclideanSphere:
    case Shape::SphereUmbilic:
    case Shape::GeodesicSphere: return {{{Piece::Sphere, n}}};
    case Shape::EuclideanCylinder: return {{{Piece::Sphere, b[0].mult}, {Piece::Flat, b[1].mult}}};
    case Shape::Hyperplane:
    case Shape::Horosphere: return {{{Piece::Flat, n}}};
    case Shape::SphereProduct: return {{{Piece::Sphere, b[0].mult}, {Piece::Sphere, b[1].mult}}};
    case Shape::Equidistant: return {{{Piece::Hyperbolic, n}}};
    case Shape::HyperbolicCylinder: return {{{Piece::Sphere, b[0].mult}, {Piece::Hyperbolic, b[1].mult}}};
  }
  return {};
}

// Frame of the H >= 0 orientation; `parts` holds one ambient vector per layout piece.
AmbientFrame frame_of(Shape shape, const IsoparametricSurface& s, const std::vector<AmbientVector>& parts) {
  const auto b = s.blocks();
  const double k1 = b[0].kappa;
  switch (shape) {
    case Shape::EuclideanSphere: {
      return {scaled(parts[0], 1.0 / k1), scaled(parts[0], -1.0)};
    }
    case Shape::EuclideanCylinder: {
      const AmbientVector zero(parts[1].size(), 0.0);
      return {concat(scaled(parts[0], 1.0 / k1), parts[1]), concat(scaled(parts[0], -1.0), zero)};
    }
    case Shape::Hyperplane: {
      AmbientVector normal(parts[0].size() + 1, 0.0);
      normal.back() = 1.0;
      return {concat(parts[0], {0.0}), normal};
    }
    case Shape::SphereUmbilic: {
      const double rho = std::atan2(1.0, k1);
      return {concat(scaled(parts[0], std::sin(rho)), {std::cos(rho)}),
              concat(scaled(parts[0], -std::cos(rho)), {std::sin(rho)})};
    }
    case Shape::SphereProduct: {
      const double r1 = 1.0 / std::hypot(1.0, k1);
      const double r2 = k1 * r1;
      return {concat(scaled(parts[0], r1), scaled(parts[1], r2)),
              concat(scaled(parts[0], -r2), scaled(parts[1], r1))};
    }
    case Shape::Horosphere: {
      const auto& u = parts[0];
      double r2 = 0.0;
      for (double x : u) r2 += x * x;
      AmbientVector f = concat({1.0 + 0.5 * r2, 0.5 * r2}, u);
      const AmbientVector ell = [&] {
        AmbientVector l(f.size(), 0.0);
        l[0] = l[1] = 1.0;
        return l;
      }();
      AmbientVector normal(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) normal[i] = k1 * (ell[i] - f[i]);
      return {f, normal};
    }
    case Shape::GeodesicSphere: {
      const double rho = std::atanh(1.0 / k1);
      return {concat({std::cosh(rho)}, scaled(parts[0], std::sinh(rho))),
              concat({-std::sinh(rho)}, scaled(parts[0], -std::cosh(rho)))};
    }
    case Shape::Equidistant: {
      const double rho = std::atanh(k1);
      return {concat(scaled(parts[0], std::cosh(rho)), {std::sinh(rho)}),
              concat(scaled(parts[0], -std::sinh(rho)), {-std::cosh(rho)})};
    }
    case Shape::HyperbolicCylinder: {
      const double rho = std::atanh(1.0 / k1);
      return {concat(scaled(parts[1], std::cosh(rho)), scaled(parts[0], std::sinh(rho))),
              concat(scaled(parts[1], -std::sinh(rho)), scaled(parts[0], -std::cosh(rho)))};
    }
  }
  return {};
}

std::vector<int> expand_resolution(std::span<const int> resolution, int n) {
  if (resolution.empty()) throw InvalidInput("resolution must not be empty");
  std::vector<int> res(resolution.begin(), resolution.end());
  if (res.size() == 1) res.assign(static_cast<std::size_t>(n), res[0]);
  if (static_cast<int>(res.size()) != n)
    throw InvalidInput("resolution needs 1 or " + std::to_string(n) + " entries, got " +
                       std::to_string(res.size()));
  for (int r : res)
    if (r < 1) throw InvalidInput("resolution entries must be positive");
  return res;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

double SampledSurface::max_frame_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    worst = std::max(worst, frame_residual(space_form, points[i], normals[i]));
  return worst;
}

bool has_embedding(const IsoparametricSurface& surface) noexcept {
  return shape_of(surface).has_value();
}

SampledSurface initial_embedding(const IsoparametricSurface& surface, std::span<const int> resolution) {
  const auto shape = shape_of(surface);
  if (!shape)
    throw UnsupportedEmbedding("no explicit embedding for the " + std::string(family_name(surface.family())) +
                               " family with g = " + std::to_string(surface.distinct_count()));
  const int n = surface.dimension();
  const auto res = expand_resolution(resolution, n);
  const auto [oriented, flipped] = surface.oriented();
  const Layout layout = layout_of(*shape, oriented);

  SampledSurface out{surface.space_form(),
                     surface.family(),
                     0.0,
                     0.0,
                     static_cast<std::size_t>(n + (surface.space_form().curvature() == 0 ? 1 : 2)),
                     res,
                     {},
                     {}};
  std::size_t total = 1;
  for (int r : res) total *= static_cast<std::size_t>(r);
  out.points.reserve(total);
  out.normals.reserve(total);

  std::vector<int> idx(res.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<AmbientVector> parts;
    std::size_t p = 0;
    for (const auto& [piece, dim] : layout.pieces) {
      std::vector<double> params(static_cast<std::size_t>(dim));
      for (int k = 0; k < dim; ++k, ++p) params[k] = param_value(piece, k, dim, idx[p], res[p]);
      parts.push_back(piece_point(piece, params));
    }
    AmbientFrame frame = frame_of(*shape, oriented, parts);
    if (flipped)
      for (double& x : frame.normal) x = -x;
    out.points.push_back(std::move(frame.point));
    out.normals.push_back(std::move(frame.normal));
    for (std::size_t d = res.size(); d-- > 0;) {
      if (++idx[d] < res[d]) break;
      idx[d] = 0;
    }
  }
  return out;
}

SampledSurface sample(const IsoparametricSurface& surface, std::span<const int> resolution, double t,
                      const ClosedFormProfile& profile) {
  if (!profile.stationary() && profile.family() != surface.family())
    throw FamilyMismatch("profile family does not match the surface");
  SampledSurface out = initial_embedding(surface, resolution);
  const double xi = profile.xi(t);
  out.t = t;
  out.xi = xi;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    AmbientFrame evolved = parallel_point(surface.space_form(), out.points[i], out.normals[i], xi);
    out.points[i] = std::move(evolved.point);
    out.normals[i] = std::move(evolved.normal);
  }
  return out;
}

void export_csv(const SampledSurface& samples, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::size_t d = samples.ambient_dim;
  std::string line;
  for (std::size_t i = 0; i < d; ++i) line += "x" + std::to_string(i) + ",";
  for (std::size_t i = 0; i < d; ++i) line += "nx" + std::to_string(i) + ",";
  line += "t\n";
  out << line;
  const std::string t = format_double(samples.t);
  for (std::size_t r = 0; r < samples.points.size(); ++r) {
    line.clear();
    for (double v : samples.points[r]) line += format_double(v) + ",";
    for (double v : samples.normals[r]) line += format_double(v) + ",";
    line += t;
    line += '\n';
    out << line;
  }
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

CsvSnapshot read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path.string() + "' has no header");
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns % 2 != 1 || columns < 3) throw IoError("'" + path.string() + "' has a malformed header");
  const std::size_t d = (columns - 1) / 2;
  CsvSnapshot snap;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> values;
    values.reserve(columns);
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(p, comma, v);
      if (ec != std::errc{} || ptr != comma)
        throw IoError("'" + path.string() + "' line " + std::to_string(row) + ": bad number");
      values.push_back(v);
      p = comma + 1;
    }
    if (values.size() != columns)
      throw IoError("'" + path.string() + "' line " + std::to_string(row) + ": expected " +
                    std::to_string(columns) + " fields");
    snap.points.emplace_back(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(d));
    snap.normals.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(d),
                              values.begin() + static_cast<std::ptrdiff_t>(2 * d));
    snap.times.push_back(values.back());
  }
  return snap;
}

void export_metadata(const SampledSurface& samples, const std::filesystem::path& path) {
  const nlohmann::json meta{{"family", family_name(samples.family)},
                            {"t", samples.t},
                            {"xi", samples.xi},
                            {"resolution", samples.resolution}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << meta.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace isoflow
