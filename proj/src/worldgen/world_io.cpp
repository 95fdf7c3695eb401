#include "voxnav/worldgen/world_io.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "voxnav/core/errors.hpp"

namespace voxnav::worldgen {

namespace {

using Json = nlohmann::ordered_json;

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& data) {
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= data.size(); i += 3) {
    std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out.push_back(kB64Alphabet[v & 63]);
  }
  std::size_t rest = data.size() - i;
  if (rest == 1) {
    std::uint32_t v = data[i] << 16;
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back('=');
    out.push_back('=');
  } else if (rest == 2) {
    std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  std::array<int, 256> lut;
  lut.fill(-1);
  for (int i = 0; i < 64; ++i) lut[static_cast<unsigned char>(kB64Alphabet[i])] = i;

  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=') break;
    int v = lut[static_cast<unsigned char>(c)];
    if (v < 0) throw ConfigError("world file: invalid base64 payload");
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
    }
  }
  return out;
}

Json require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("world file: missing field '") + key + "'");
  return j.at(key);
}

int to_mm(double meters) { return static_cast<int>(std::llround(meters * 1000.0)); }
double from_mm(int mm) { return mm / 1000.0; }

}  // namespace

std::string world_to_json(const GeneratedWorld& g) {
  const VoxelWorld& w = g.world;
  Json j;
  j["format"] = "voxnav-world";
  j["version"] = 1;
  j["preset"] = preset_name(g.preset);
  j["seed"] = g.seed.value;
  j["resolution"] = w.resolution();
  j["dims"] = {w.nx(), w.ny(), w.nz()};
  j["origin_mm"] = {to_mm(w.origin_x()), to_mm(w.origin_y()), to_mm(w.origin_z())};
  j["spawn_mm"] = {to_mm(g.spawn.sx), to_mm(g.spawn.sy), to_mm(g.spawn.gx), to_mm(g.spawn.gy)};
  j["obstacle_count"] = g.obstacle_count;

  std::vector<int> ground_mm;
  ground_mm.reserve(w.raw_ground().size());
  for (float v : w.raw_ground()) ground_mm.push_back(to_mm(v));
  j["ground_mm"] = ground_mm;

  std::vector<std::uint8_t> bytes;
  bytes.reserve(w.raw_bits().size() * 8);
  for (std::uint64_t word : w.raw_bits()) {
    for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<std::uint8_t>((word >> (8 * b)) & 0xff));
  }
  j["occupancy_b64"] = base64_encode(bytes);
  return j.dump();
}

GeneratedWorld world_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("world file: not valid JSON: ") + e.what());
  }
  try {
    if (require(j, "format").get<std::string>() != "voxnav-world") {
      throw ConfigError("world file: unrecognized format tag");
    }
    if (require(j, "version").get<int>() != 1) {
      throw ConfigError("world file: unsupported version");
    }
    auto dims = require(j, "dims");
    auto origin = require(j, "origin_mm");
    double res = require(j, "resolution").get<double>();

    GeneratedWorld g;
    g.preset = preset_from_name(require(j, "preset").get<std::string>());
    g.seed = Seed{require(j, "seed").get<std::uint64_t>()};
    g.obstacle_count = require(j, "obstacle_count").get<int>();
    auto spawn = require(j, "spawn_mm");
    g.spawn = {from_mm(spawn.at(0).get<int>()), from_mm(spawn.at(1).get<int>()),
               from_mm(spawn.at(2).get<int>()), from_mm(spawn.at(3).get<int>())};

    g.world = VoxelWorld(dims.at(0).get<int>(), dims.at(1).get<int>(), dims.at(2).get<int>(), res,
                         from_mm(origin.at(0).get<int>()), from_mm(origin.at(1).get<int>()),
                         from_mm(origin.at(2).get<int>()));

    auto ground_mm = require(j, "ground_mm");
    if (ground_mm.size() != g.world.raw_ground().size()) {
      throw ConfigError("world file: ground map size mismatch");
    }
    for (std::size_t i = 0; i < g.world.raw_ground().size(); ++i) {
      g.world.raw_ground()[i] = static_cast<float>(from_mm(ground_mm.at(i).get<int>()));
    }

    std::vector<std::uint8_t> bytes = base64_decode(require(j, "occupancy_b64").get<std::string>());
    if (bytes.size() != g.world.raw_bits().size() * 8) {
      throw ConfigError("world file: occupancy payload size mismatch");
    }
    for (std::size_t i = 0; i < g.world.raw_bits().size(); ++i) {
      std::uint64_t word = 0;
      for (int b = 0; b < 8; ++b) word |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
      g.world.raw_bits()[i] = word;
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("world file: malformed field: ") + e.what());
  }
}

void save_world(const std::filesystem::path& path, const GeneratedWorld& world) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << world_to_json(world) << '\n';
}

GeneratedWorld load_world(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return world_from_json(buf.str());
}

std::string tileset_to_json(const Tileset& ts) {
  Json j;
  j["format"] = "voxnav-tileset";
  j["version"] = 1;
  j["tile_edge"] = ts.tile_edge;
  j["resolution"] = ts.resolution;
  Json tiles = Json::array();
  for (const Tile& t : ts.tiles) {
    Json tj;
    tj["id"] = t.id;
    tj["name"] = t.name;
    switch (t.surface) {
      case SurfaceClass::kFlat: tj["surface"] = "flat"; break;
      case SurfaceClass::kRough: tj["surface"] = "rough"; break;
      case SurfaceClass::kObstructed: tj["surface"] = "obstructed"; break;
    }
    tj["weight"] = t.weight;
    tj["edges"] = {t.edge[0], t.edge[1], t.edge[2], t.edge[3]};
    std::vector<int> elev, block;
    elev.reserve(t.elevation.size());
    block.reserve(t.blocked_height.size());
    for (float v : t.elevation) elev.push_back(to_mm(v));
    for (float v : t.blocked_height) block.push_back(to_mm(v));
    tj["elevation_mm"] = elev;
    tj["blocked_mm"] = block;
    tiles.push_back(tj);
  }
  j["tiles"] = tiles;
  Json rules = Json::array();
  for (const AdjacencyRule& r : ts.rules) rules.push_back(Json::array({r.a, r.side, r.b}));
  j["rules"] = rules;
  return j.dump();
}

Tileset tileset_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tileset file: not valid JSON: ") + e.what());
  }
  try {
    if (require(j, "format").get<std::string>() != "voxnav-tileset") {
      throw ConfigError("tileset file: unrecognized format tag");
    }
    if (require(j, "version").get<int>() != 1) {
      throw ConfigError("tileset file: unsupported version");
    }
    Tileset ts;
    ts.tile_edge = require(j, "tile_edge").get<double>();
    ts.resolution = require(j, "resolution").get<double>();
    for (const Json& tj : require(j, "tiles")) {
      Tile t;
      t.id = tj.at("id").get<int>();
      t.name = tj.at("name").get<std::string>();
      std::string s = tj.at("surface").get<std::string>();
      if (s == "flat") {
        t.surface = SurfaceClass::kFlat;
      } else if (s == "rough") {
        t.surface = SurfaceClass::kRough;
      } else if (s == "obstructed") {
        t.surface = SurfaceClass::kObstructed;
      } else {
        throw ConfigError("tileset file: unknown surface class '" + s + "'");
      }
      t.weight = tj.at("weight").get<double>();
      for (int i = 0; i < 4; ++i) t.edge[i] = tj.at("edges").at(i).get<int>();
      for (const Json& v : tj.at("elevation_mm")) {
        t.elevation.push_back(static_cast<float>(from_mm(v.get<int>())));
      }
      for (const Json& v : tj.at("blocked_mm")) {
        t.blocked_height.push_back(static_cast<float>(from_mm(v.get<int>())));
      }
      ts.tiles.push_back(std::move(t));
    }
    for (const Json& rj : require(j, "rules")) {
      ts.rules.push_back({rj.at(0).get<int>(), rj.at(1).get<int>(), rj.at(2).get<int>()});
    }
    ts.validate();
    return ts;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tileset file: malformed field: ") + e.what());
  }
}

void save_tileset(const std::filesystem::path& path, const Tileset& tileset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << tileset_to_json(tileset) << '\n';
}

Tileset load_tileset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return tileset_from_json(buf.str());
}

}  // namespace voxnav::worldgen
