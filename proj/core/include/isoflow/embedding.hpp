#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "isoflow/closed_form.hpp"
#include "isoflow/space_form.hpp"
#include "isoflow/surface.hpp"

namespace isoflow {

/// Point cloud of an evolved hypersurface on a regular parameter grid.
struct SampledSurface {
  SpaceForm space_form;
  Family family;
  double t;
  double xi;
  /// Coordinates per ambient vector: n + 1 for Euclidean space, n + 2 otherwise.
  std::size_t ambient_dim;
  /// Grid points per intrinsic parameter; points are stored row-major, first parameter slowest.
  std::vector<int> resolution;
  std::vector<AmbientVector> points;
  std::vector<AmbientVector> normals;

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
  /// Largest frame_residual over all samples.
  [[nodiscard]] double max_frame_residual() const;
};

/// Whether sample() can build an explicit embedding: every family with g <= 2,
/// including minimal data of that shape. The spherical g = 3, 4, 6 families have none.
[[nodiscard]] bool has_embedding(const IsoparametricSurface& surface) noexcept;

/// The initial frame (F, N) on the parameter grid, oriented as `surface`.
/// A single resolution entry applies to every intrinsic parameter.
/// Throws UnsupportedEmbedding or InvalidInput (bad resolution).
[[nodiscard]] SampledSurface initial_embedding(const IsoparametricSurface& surface,
                                               std::span<const int> resolution);

/// F^t = c(xi(t)) F + s(xi(t)) N on the grid, with the evolved unit normal.
[[nodiscard]] SampledSurface sample(const IsoparametricSurface& surface, std::span<const int> resolution,
                                    double t, const ClosedFormProfile& profile);

/// Header x0..x{d},nx0..nx{d},t then one row per sample, 17 significant digits.
void export_csv(const SampledSurface& samples, const std::filesystem::path& path);

/// Rows of a file written by export_csv.
struct CsvSnapshot {
  std::vector<AmbientVector> points;
  std::vector<AmbientVector> normals;
  std::vector<double> times;
};

[[nodiscard]] CsvSnapshot read_csv(const std::filesystem::path& path);

/// Sidecar {family, t, xi, resolution}.
void export_metadata(const SampledSurface& samples, const std::filesystem::path& path);

}  // namespace isoflow
