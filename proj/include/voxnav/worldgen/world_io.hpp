#pragma once

#include <filesystem>
#include <string>

#include "voxnav/worldgen/worldgen.hpp"

namespace voxnav::worldgen {

/// World serialization: a versioned JSON header (preset, seed, dims,
/// resolution, origin, spawn points) plus a millimeter-quantized ground map
/// and the occupancy bitset as base64 of its little-endian 64-bit words.
/// Serialization is byte-deterministic: equal worlds produce equal strings.
std::string world_to_json(const GeneratedWorld& world);
GeneratedWorld world_from_json(const std::string& text);  // ConfigError on malformed input

void save_world(const std::filesystem::path& path, const GeneratedWorld& world);
GeneratedWorld load_world(const std::filesystem::path& path);

/// Tileset serialization: tiles with templates (millimeter ints), weights,
/// edge profiles, and the explicit adjacency rule list. Loading re-validates
/// (rule symmetry included) and throws ConfigError on any violation.
std::string tileset_to_json(const Tileset& tileset);
Tileset tileset_from_json(const std::string& text);

void save_tileset(const std::filesystem::path& path, const Tileset& tileset);
Tileset load_tileset(const std::filesystem::path& path);

}  // namespace voxnav::worldgen
