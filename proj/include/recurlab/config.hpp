#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "recurlab/maps.hpp"

namespace recurlab {

/// Flat experiment configuration. On disk it is a JSON object whose keys are
/// the dotted names below and whose values are decimal strings, e.g.
///   {"map.kind": "classic-mp", "map.z": "3", "orbit.iters": "100000000"}
/// Missing keys keep their defaults. Reals are written in shortest
/// round-trip form, so write followed by read reproduces every field exactly.
struct Config {
  MapKind map_kind = MapKind::ClassicMP;
  double map_z = 3.0;
  double map_c = 0.5;
  std::uint64_t orbit_iters = 1'000'000;
  std::uint64_t orbit_burn_in = 0;
  unsigned orbit_precision_bits = 53;
  std::uint64_t ensemble_size = 10;
  std::uint64_t ensemble_seed = 0;
  double ball_r_min = 1e-4;
  double ball_r_max = 1e-2;
  unsigned ball_grid_points = 9;
  std::size_t cylinder_n_min = 1;
  std::size_t cylinder_n_max = 64;
  // 0 selects the default order sqrt(count).
  std::size_t hill_k = 0;
  double counterexample_d = 0.25;
  unsigned counterexample_stages = 3;
  std::string out_path;

  // Throws ConfigError naming the first invalid key.
  void validate() const;
  // Map described by map.kind / map.z / map.c; ConfigError on bad values.
  MapSpec map() const;
  bool operator==(const Config&) const = default;
};

Config parse_config(std::string_view json_text);
// indent < 0 writes a single line.
std::string format_config(const Config& cfg, int indent = 2);

Config read_config(const std::filesystem::path& path);
void write_config(const Config& cfg, const std::filesystem::path& path);

// Decimal text helpers shared with the CLI; both throw ConfigError(key, ...).
double parse_real(std::string_view text, const std::string& key);
// Accepts integers written as reals ("1e8"), rejecting fractions and negatives.
std::uint64_t parse_count(std::string_view text, const std::string& key);
std::string format_real(double v);

}  // namespace recurlab
