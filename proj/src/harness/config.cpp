#include "voxnav/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "format.hpp"
#include "voxnav/core/errors.hpp"

namespace voxnav::harness {

namespace {

struct Value {
  enum class Kind { kNumber, kBool, kArray };
  Kind kind = Kind::kNumber;
  double number = 0.0;
  bool flag = false;
  std::vector<double> array;
  int line = 0;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view token, int line) {
  token = trim(token);
  double out = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [end, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || end != last) {
    fail(line, "expected a number, got '" + std::string(token) + "'");
  }
  return out;
}

Value parse_value(std::string_view text, int line) {
  text = trim(text);
  Value v;
  v.line = line;
  if (text == "true" || text == "false") {
    v.kind = Value::Kind::kBool;
    v.flag = text == "true";
    return v;
  }
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') fail(line, "unterminated array");
    v.kind = Value::Kind::kArray;
    std::string_view body = trim(text.substr(1, text.size() - 2));
    while (!body.empty()) {
      const std::size_t comma = body.find(',');
      const std::string_view item =
          comma == std::string_view::npos ? body : body.substr(0, comma);
      v.array.push_back(parse_number(item, line));
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
      if (body.empty()) fail(line, "trailing comma in array");
    }
    return v;
  }
  v.kind = Value::Kind::kNumber;
  v.number = parse_number(text, line);
  return v;
}

double as_number(const Value& v) {
  if (v.kind != Value::Kind::kNumber) fail(v.line, "expected a number");
  return v.number;
}

int as_int(const Value& v) {
  const double d = as_number(v);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) fail(v.line, "expected an integer");
  return i;
}

bool as_bool(const Value& v) {
  if (v.kind != Value::Kind::kBool) fail(v.line, "expected true or false");
  return v.flag;
}

std::vector<double> as_array(const Value& v, std::size_t n) {
  if (v.kind != Value::Kind::kArray) fail(v.line, "expected an array");
  if (n != 0 && v.array.size() != n) {
    fail(v.line, "expected an array of " + std::to_string(n) + " numbers");
  }
  return v.array;
}

using Setter = std::function<void(HarnessConfig&, const Value&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["reward.w1"] = [](HarnessConfig& c, const Value& v) { c.weights.w1 = as_number(v); };
    t["reward.w2"] = [](HarnessConfig& c, const Value& v) { c.weights.w2 = as_number(v); };
    t["reward.w3"] = [](HarnessConfig& c, const Value& v) { c.weights.w3 = as_number(v); };
    t["reward.w4"] = [](HarnessConfig& c, const Value& v) { c.weights.w4 = as_number(v); };
    t["reward.w5"] = [](HarnessConfig& c, const Value& v) { c.weights.w5 = as_number(v); };
    t["reward.w6"] = [](HarnessConfig& c, const Value& v) { c.weights.w6 = as_number(v); };
    t["reward.w7"] = [](HarnessConfig& c, const Value& v) { c.weights.w7 = as_number(v); };
    t["reward.w8"] = [](HarnessConfig& c, const Value& v) { c.weights.w8 = as_number(v); };
    t["reward.w9"] = [](HarnessConfig& c, const Value& v) { c.weights.w9 = as_number(v); };
    t["reward.w10"] = [](HarnessConfig& c, const Value& v) { c.weights.w10 = as_number(v); };
    t["reward.nominal_h"] = [](HarnessConfig& c, const Value& v) {
      c.reward.nominal_h = as_number(v);
    };
    t["reward.posture_term"] = [](HarnessConfig& c, const Value& v) {
      c.reward.posture_term = as_bool(v);
    };
    t["reward.arrival_radius"] = [](HarnessConfig& c, const Value& v) {
      c.reward.arrival_radius = as_number(v);
    };
    t["reward.speed_scale"] = [](HarnessConfig& c, const Value& v) {
      c.reward.speed_scale = as_number(v);
    };
    t["reward.visit_cell"] = [](HarnessConfig& c, const Value& v) {
      c.visit_cell = as_number(v);
    };
    t["executor.tau"] = [](HarnessConfig& c, const Value& v) {
      const auto a = as_array(v, 5);
      std::copy(a.begin(), a.end(), c.executor.tau.begin());
    };
    t["executor.noise_std"] = [](HarnessConfig& c, const Value& v) {
      const auto a = as_array(v, 5);
      std::copy(a.begin(), a.end(), c.executor.noise_std.begin());
    };
    t["executor.delay_ticks"] = [](HarnessConfig& c, const Value& v) {
      c.executor.delay_ticks = as_int(v);
    };
    t["executor.dt"] = [](HarnessConfig& c, const Value& v) { c.executor.dt = as_number(v); };
    t["body.length"] = [](HarnessConfig& c, const Value& v) { c.body.length = as_number(v); };
    t["body.width"] = [](HarnessConfig& c, const Value& v) { c.body.width = as_number(v); };
    t["body.thickness"] = [](HarnessConfig& c, const Value& v) {
      c.body.thickness = as_number(v);
    };
    t["body.nominal_h"] = [](HarnessConfig& c, const Value& v) {
      c.body.nominal_h = as_number(v);
    };
    t["body.camera_mount"] = [](HarnessConfig& c, const Value& v) {
      const auto a = as_array(v, 3);
      std::copy(a.begin(), a.end(), c.body.camera_mount.begin());
    };
    t["planner.clearance_any"] = [](HarnessConfig& c, const Value& v) {
      c.planner.clearance_any = as_number(v);
    };
    t["planner.clearance_nominal"] = [](HarnessConfig& c, const Value& v) {
      c.planner.clearance_nominal = as_number(v);
    };
    t["planner.inflate_any"] = [](HarnessConfig& c, const Value& v) {
      c.planner.inflate_any = as_number(v);
    };
    t["planner.inflate_nominal"] = [](HarnessConfig& c, const Value& v) {
      c.planner.inflate_nominal = as_number(v);
    };
    t["planner.crouch_below"] = [](HarnessConfig& c, const Value& v) {
      c.planner.crouch_below = as_number(v);
    };
    t["planner.roll_below"] = [](HarnessConfig& c, const Value& v) {
      c.planner.roll_below = as_number(v);
    };
    t["planner.allow_posture"] = [](HarnessConfig& c, const Value& v) {
      c.planner.allow_posture = as_bool(v);
    };
    t["planner.prefer_gvd"] = [](HarnessConfig& c, const Value& v) {
      c.planner.prefer_gvd = as_bool(v);
    };
    t["curriculum.base_spacing"] = [](HarnessConfig& c, const Value& v) {
      c.curriculum.base_spacing = as_number(v);
    };
    t["curriculum.spacing_step"] = [](HarnessConfig& c, const Value& v) {
      c.curriculum.spacing_step = as_number(v);
    };
    t["curriculum.arrival_radius"] = [](HarnessConfig& c, const Value& v) {
      c.curriculum.arrival_radius = as_number(v);
    };
    t["curriculum.promotions_needed"] = [](HarnessConfig& c, const Value& v) {
      c.curriculum.promotions_needed = as_int(v);
    };
    t["curriculum.gamma"] = [](HarnessConfig& c, const Value& v) {
      c.curriculum.gamma = as_number(v);
    };
    t["curriculum.segment_timeout_s"] = [](HarnessConfig& c, const Value& v) {
      c.curriculum.segment_timeout_s = as_number(v);
    };
    t["episode.max_ticks"] = [](HarnessConfig& c, const Value& v) {
      c.max_ticks = as_int(v);
    };
    t["episode.arrival_radius"] = [](HarnessConfig& c, const Value& v) {
      c.arrival_radius = as_number(v);
    };
    t["episode.v_des_min"] = [](HarnessConfig& c, const Value& v) {
      c.v_des_min = as_number(v);
    };
    t["episode.v_des_max"] = [](HarnessConfig& c, const Value& v) {
      c.v_des_max = as_number(v);
    };
    t["cem.population"] = [](HarnessConfig& c, const Value& v) {
      c.cem.population = as_int(v);
    };
    t["cem.elite_fraction"] = [](HarnessConfig& c, const Value& v) {
      c.cem.elite_fraction = as_number(v);
    };
    t["cem.iterations"] = [](HarnessConfig& c, const Value& v) {
      c.cem.iterations = as_int(v);
    };
    t["cem.episodes_per_candidate"] = [](HarnessConfig& c, const Value& v) {
      c.cem.episodes_per_candidate = as_int(v);
    };
    t["cem.std_floor"] = [](HarnessConfig& c, const Value& v) {
      c.cem.std_floor = as_number(v);
    };
    t["cem.init_mean"] = [](HarnessConfig& c, const Value& v) {
      c.cem.init_mean = as_array(v, 0);
    };
    t["cem.init_std"] = [](HarnessConfig& c, const Value& v) {
      c.cem.init_std = as_array(v, 0);
    };
    return t;
  }();
  return table;
}

std::string strip_comment(const std::string& line) {
  const std::size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

void emit(std::string& out, const char* key, double v) {
  out += key;
  out += " = ";
  out += num_str(v);
  out += '\n';
}

void emit(std::string& out, const char* key, int v) {
  out += key;
  out += " = ";
  out += std::to_string(v);
  out += '\n';
}

void emit(std::string& out, const char* key, bool v) {
  out += key;
  out += v ? " = true\n" : " = false\n";
}

template <typename Range>
void emit_array(std::string& out, const char* key, const Range& values) {
  out += key;
  out += " = [";
  bool first = true;
  for (double v : values) {
    if (!first) out += ", ";
    out += num_str(v);
    first = false;
  }
  out += "]\n";
}

}  // namespace

HarnessConfig parse_config(const std::string& text) {
  HarnessConfig config;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string stripped = strip_comment(raw);
    const std::string_view line = trim(stripped);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(line_no, "empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) fail(line_no, "empty key");
    if (section.empty()) fail(line_no, "key outside any [section]");
    const Value value = parse_value(line.substr(eq + 1), line_no);
    const std::string full = section + "." + key;
    const auto it = setters().find(full);
    if (it == setters().end()) fail(line_no, "unknown key " + full);
    it->second(config, value);
  }
  return config;
}

std::string config_to_toml(const HarnessConfig& c) {
  std::string out;
  out += "# Simulation benchmark settings. Values here override the built-in\n";
  out += "# defaults; omitted keys keep them.\n";
  out += "\n[reward]  # high-level term weights and shaping knobs\n";
  emit(out, "w1", c.weights.w1);
  emit(out, "w2", c.weights.w2);
  emit(out, "w3", c.weights.w3);
  emit(out, "w4", c.weights.w4);
  emit(out, "w5", c.weights.w5);
  emit(out, "w6", c.weights.w6);
  emit(out, "w7", c.weights.w7);
  emit(out, "w8", c.weights.w8);
  emit(out, "w9", c.weights.w9);
  emit(out, "w10", c.weights.w10);
  emit(out, "nominal_h", c.reward.nominal_h);
  emit(out, "posture_term", c.reward.posture_term);
  emit(out, "arrival_radius", c.reward.arrival_radius);
  emit(out, "speed_scale", c.reward.speed_scale);
  emit(out, "visit_cell", c.visit_cell);
  out += "\n[executor]  # command tracking: per-channel lag, noise, delay\n";
  emit_array(out, "tau", c.executor.tau);
  emit_array(out, "noise_std", c.executor.noise_std);
  emit(out, "delay_ticks", c.executor.delay_ticks);
  emit(out, "dt", c.executor.dt);
  out += "\n[body]  # rigid box model and camera mount\n";
  emit(out, "length", c.body.length);
  emit(out, "width", c.body.width);
  emit(out, "thickness", c.body.thickness);
  emit(out, "nominal_h", c.body.nominal_h);
  emit_array(out, "camera_mount", c.body.camera_mount);
  out += "\n[planner]  # passability thresholds and posture annotations\n";
  emit(out, "clearance_any", c.planner.clearance_any);
  emit(out, "clearance_nominal", c.planner.clearance_nominal);
  emit(out, "inflate_any", c.planner.inflate_any);
  emit(out, "inflate_nominal", c.planner.inflate_nominal);
  emit(out, "crouch_below", c.planner.crouch_below);
  emit(out, "roll_below", c.planner.roll_below);
  emit(out, "allow_posture", c.planner.allow_posture);
  emit(out, "prefer_gvd", c.planner.prefer_gvd);
  out += "\n[curriculum]  # sub-goal ladder and segment bookkeeping\n";
  emit(out, "base_spacing", c.curriculum.base_spacing);
  emit(out, "spacing_step", c.curriculum.spacing_step);
  emit(out, "arrival_radius", c.curriculum.arrival_radius);
  emit(out, "promotions_needed", c.curriculum.promotions_needed);
  emit(out, "gamma", c.curriculum.gamma);
  emit(out, "segment_timeout_s", c.curriculum.segment_timeout_s);
  out += "\n[episode]  # benchmark episode protocol\n";
  emit(out, "max_ticks", c.max_ticks);
  emit(out, "arrival_radius", c.arrival_radius);
  emit(out, "v_des_min", c.v_des_min);
  emit(out, "v_des_max", c.v_des_max);
  out += "\n[cem]  # cross-entropy search budget\n";
  emit(out, "population", c.cem.population);
  emit(out, "elite_fraction", c.cem.elite_fraction);
  emit(out, "iterations", c.cem.iterations);
  emit(out, "episodes_per_candidate", c.cem.episodes_per_candidate);
  emit(out, "std_floor", c.cem.std_floor);
  emit_array(out, "init_mean", c.cem.init_mean);
  emit_array(out, "init_std", c.cem.init_std);
  return out;
}

std::string default_config_toml() { return config_to_toml(HarnessConfig{}); }

HarnessConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

EpisodeConfig episode_config(const HarnessConfig& config) {
  EpisodeConfig e;
  e.executor = config.executor;
  e.geometry = config.body;
  e.weights = config.weights;
  e.reward = config.reward;
  e.curriculum = config.curriculum;
  e.max_ticks = config.max_ticks;
  e.arrival_radius = config.arrival_radius;
  e.v_des_min = config.v_des_min;
  e.v_des_max = config.v_des_max;
  e.visit_cell = config.visit_cell;
  return e;
}

}  // namespace voxnav::harness
