#pragma once

#include <filesystem>

#include <nlohmann/json_fwd.hpp>

#include "isoflow/surface.hpp"

namespace isoflow {

/// {"space_form": -1|0|1, "blocks": [{"kappa": k, "mult": m}, ...], "family": "<tag>"}
[[nodiscard]] nlohmann::json surface_to_json(const IsoparametricSurface& surface);

/// Throws InvalidInput on schema errors and InvalidSurface on invalid data.
[[nodiscard]] IsoparametricSurface surface_from_json(const nlohmann::json& j);

/// Throws IoError when the file cannot be read or is not JSON.
[[nodiscard]] IsoparametricSurface load_surface(const std::filesystem::path& path);
void save_surface(const IsoparametricSurface& surface, const std::filesystem::path& path);

}  // namespace isoflow
