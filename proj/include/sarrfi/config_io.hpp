// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include <json.hpp>

#include "sarrfi/lowrank.hpp"
#include "sarrfi/simulator.hpp"
#include "sarrfi/types.hpp"

namespace sarrfi {

using Json = nlohmann::json;

/// JSON field names match the struct members. eta0/tau0 may be omitted, in
/// which case the windows are centred (center_windows). gamma values are
/// either a number or a [re, im] pair. Malformed input throws Errc::invalid_config.
RadarConfig radar_from_json(const Json& j);
Json to_json(const RadarConfig& cfg);

InterferenceConfig interference_from_json(const Json& j);
Json to_json(const InterferenceConfig& icfg);

/// {"scatterers": [{"gamma0": ..., "x0": ..., "R0": ...}, ...]}
Scene scene_from_json(const Json& j);
Json to_json(const Scene& scene);

Json to_json(const ArtefactFootprint& fp);

/// Reads and parses a JSON file. Throws Errc::io if unreadable and
/// Errc::invalid_config on a parse error.
Json load_json(const std::filesystem::path& path);
void save_json(const Json& j, const std::filesystem::path& path);

}  // namespace sarrfi
