#include "isoflow/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "isoflow/errors.hpp"

namespace isoflow {

nlohmann::json surface_to_json(const IsoparametricSurface& surface) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : surface.blocks()) blocks.push_back({{"kappa", b.kappa}, {"mult", b.mult}});
  return {{"space_form", surface.space_form().curvature()},
          {"blocks", blocks},
          {"family", family_name(surface.family())}};
}

IsoparametricSurface surface_from_json(const nlohmann::json& j) {
  try {
    const SpaceForm sf(j.at("space_form").get<int>());
    std::vector<CurvatureBlock> blocks;
    for (const auto& b : j.at("blocks")) blocks.push_back({b.at("kappa").get<double>(), b.at("mult").get<int>()});
    return IsoparametricSurface::create(sf, std::move(blocks), family_from_name(j.at("family").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("surface JSON: ") + e.what());
  }
}

IsoparametricSurface load_surface(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("'" + path.string() + "': " + e.what());
  }
  return surface_from_json(j);
}

void save_surface(const IsoparametricSurface& surface, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << surface_to_json(surface).dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace isoflow
