#include "recurlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "recurlab/errors.hpp"

namespace recurlab {

namespace {

using nlohmann::json;

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

template <class T>
T narrow_count(std::string_view text, const std::string& key) {
  const std::uint64_t v = parse_count(text, key);
  if (v > std::numeric_limits<T>::max()) throw ConfigError(key, "value out of range");
  return static_cast<T>(v);
}

struct Field {
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, std::string_view)> set;
};

template <class T>
Field count_field(T Config::*member, const char* key) {
  return {[member](const Config& c) { return std::to_string(c.*member); },
          [member, key](Config& c, std::string_view v) { c.*member = narrow_count<T>(v, key); }};
}

Field real_field(double Config::*member, const char* key) {
  return {[member](const Config& c) { return format_real(c.*member); },
          [member, key](Config& c, std::string_view v) { c.*member = parse_real(v, key); }};
}

// Ordered by key, which is also the on-disk order.
const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"map.kind",
       {[](const Config& c) { return std::string(to_string(c.map_kind)); },
        [](Config& c, std::string_view v) {
          try {
            c.map_kind = parse_map_kind(trimmed(v));
          } catch (const std::exception& e) {
            throw ConfigError("map.kind", e.what());
          }
        }}},
      {"map.z", real_field(&Config::map_z, "map.z")},
      {"map.c", real_field(&Config::map_c, "map.c")},
      {"orbit.iters", count_field(&Config::orbit_iters, "orbit.iters")},
      {"orbit.burn_in", count_field(&Config::orbit_burn_in, "orbit.burn_in")},
      {"orbit.precision_bits", count_field(&Config::orbit_precision_bits, "orbit.precision_bits")},
      {"ensemble.size", count_field(&Config::ensemble_size, "ensemble.size")},
      {"ensemble.seed", count_field(&Config::ensemble_seed, "ensemble.seed")},
      {"ball.r_min", real_field(&Config::ball_r_min, "ball.r_min")},
      {"ball.r_max", real_field(&Config::ball_r_max, "ball.r_max")},
      {"ball.grid_points", count_field(&Config::ball_grid_points, "ball.grid_points")},
      {"cylinder.n_min", count_field(&Config::cylinder_n_min, "cylinder.n_min")},
      {"cylinder.n_max", count_field(&Config::cylinder_n_max, "cylinder.n_max")},
      {"hill.k", count_field(&Config::hill_k, "hill.k")},
      {"counterexample.d", real_field(&Config::counterexample_d, "counterexample.d")},
      {"counterexample.stages",
       count_field(&Config::counterexample_stages, "counterexample.stages")},
      {"out.path",
       {[](const Config& c) { return c.out_path; },
        [](Config& c, std::string_view v) { c.out_path = std::string(v); }}},
  };
  return table;
}

}  // namespace

double parse_real(std::string_view text, const std::string& key) {
  const std::string s = trimmed(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite real number, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view text, const std::string& key) {
  const std::string s = trimmed(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return v;
  const double d = parse_real(s, key);
  if (d < 0.0 || d != std::floor(d) || d >= 0x1.0p64) {
    throw ConfigError(key, "expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<std::uint64_t>(d);
}

std::string format_real(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void Config::validate() const {
  map();
  if (orbit_iters < 1) throw ConfigError("orbit.iters", "must be at least 1");
  if (orbit_precision_bits < 53) throw ConfigError("orbit.precision_bits", "must be >= 53");
  if (ensemble_size < 1) throw ConfigError("ensemble.size", "must be at least 1");
  if (!(ball_r_min > 0.0)) throw ConfigError("ball.r_min", "must be positive");
  if (!(ball_r_max > ball_r_min)) throw ConfigError("ball.r_max", "must exceed ball.r_min");
  if (!(ball_r_max < 0.25)) throw ConfigError("ball.r_max", "must be below 1/4");
  if (ball_grid_points < 3) throw ConfigError("ball.grid_points", "a slope fit needs >= 3 radii");
  if (cylinder_n_min < 1) throw ConfigError("cylinder.n_min", "must be at least 1");
  if (cylinder_n_max < cylinder_n_min) {
    throw ConfigError("cylinder.n_max", "must be >= cylinder.n_min");
  }
  if (!(counterexample_d > 0.0 && counterexample_d < 0.5)) {
    throw ConfigError("counterexample.d", "must lie in (0, 1/2)");
  }
  if (counterexample_stages < 1) throw ConfigError("counterexample.stages", "must be >= 1");
}

MapSpec Config::map() const {
  try {
    switch (map_kind) {
      case MapKind::Doubling:
        return MapSpec::doubling();
      case MapKind::ClassicMP:
        return MapSpec::classic_mp(map_z);
      case MapKind::ParamMP:
        break;
    }
    return MapSpec::param_mp(map_z, map_c);
  } catch (const DomainError& e) {
    const std::string what = e.what();
    throw ConfigError(what.find("split") != std::string::npos ? "map.c" : "map.z", what);
  }
}

Config parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  Config cfg;
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields().find(key);
    if (it == fields().end()) throw ConfigError(key, "unknown configuration key");
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_unsigned() || value.is_number_integer()) {
      text = value.dump();
    } else if (value.is_number_float()) {
      text = format_real(value.get<double>());
    } else {
      throw ConfigError(key, "expected a string or number");
    }
    it->second.set(cfg, text);
  }
  return cfg;
}

std::string format_config(const Config& cfg, int indent) {
  json doc = json::object();
  for (const auto& [key, field] : fields()) doc[key] = field.get(cfg);
  return indent < 0 ? doc.dump() : doc.dump(indent) + "\n";
}

Config read_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void write_config(const Config& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_config(cfg);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace recurlab
