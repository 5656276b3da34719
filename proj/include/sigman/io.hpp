#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sigman/configspace.hpp"
#include "sigman/energy.hpp"
#include "sigman/gaussian.hpp"
#include "sigman/graphembed.hpp"

namespace sigman::io {

using nlohmann::json;

// Parsers throw Error(InvalidInput) with a message that names the offending
// field, e.g. "samples[3][1]: expected a number".

ManifoldSpec manifold_from_json(const json& j, const std::string& where = "manifold");
json to_json(const ManifoldSpec& m);

PolylinePath polyline_from_json(const json& j);
json to_json(const PolylinePath& path);

TriMesh mesh_from_json(const json& j);
json to_json(const TriMesh& mesh);

ConfigPath config_path_from_json(const json& j);
json to_json(const ConfigPath& path);

WeightedGraph graph_from_json(const json& j);
json to_json(const WeightedGraph& g);

json to_json(const EnergyReport& r);
json to_json(const FisherTensor& t, double mu, double sigma, std::size_t quad_points);
json to_json(const GaussianBoundReport& r);
json to_json(const ConfigBoundReport& r);
json to_json(const EmbedResult& r);

/// Reads and parses a JSON file; parse failures become InvalidInput errors.
json read_json_file(const std::filesystem::path& path);

}  // namespace sigman::io
