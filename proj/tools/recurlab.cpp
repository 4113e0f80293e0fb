// recurlab: command-line front end for the recurrence experiments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "recurlab/config.hpp"
#include "recurlab/errors.hpp"
#include "recurlab/experiments.hpp"
#include "recurlab/report.hpp"

namespace fs = std::filesystem;
using namespace recurlab;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kStagnation = 3, kInsufficientData = 4 };

struct Flags {
  std::string config_path;
  std::string map, z, c, points, iters, burn_in, seed, r_min, r_max, r_points, n_max, hill_k, d,
      stages, out, threads;
  bool strict_precision = false;
  bool verbose = false;
};

// Flags override the config file; RECURLAB_SEED fills in when --seed is absent.
Config resolve_config(const Flags& f, const CLI::App& app) {
  Config cfg = f.config_path.empty() ? Config{} : read_config(f.config_path);
  auto given = [&app](const char* name) { return app.count(name) > 0; };
  if (given("--map")) {
    try {
      cfg.map_kind = parse_map_kind(f.map);
    } catch (const DomainError& e) {
      throw ConfigError("map.kind", e.what());
    }
  }
  if (given("--z")) cfg.map_z = parse_real(f.z, "map.z");
  if (given("--c")) cfg.map_c = parse_real(f.c, "map.c");
  if (given("--points")) cfg.ensemble_size = parse_count(f.points, "ensemble.size");
  if (given("--iters")) cfg.orbit_iters = parse_count(f.iters, "orbit.iters");
  if (given("--burn-in")) cfg.orbit_burn_in = parse_count(f.burn_in, "orbit.burn_in");
  if (given("--seed")) {
    cfg.ensemble_seed = parse_count(f.seed, "ensemble.seed");
  } else if (const char* env = std::getenv("RECURLAB_SEED"); env && *env) {
    cfg.ensemble_seed = parse_count(env, "ensemble.seed");
  }
  if (given("--r-min")) cfg.ball_r_min = parse_real(f.r_min, "ball.r_min");
  if (given("--r-max")) cfg.ball_r_max = parse_real(f.r_max, "ball.r_max");
  if (given("--r-points")) {
    cfg.ball_grid_points = static_cast<unsigned>(parse_count(f.r_points, "ball.grid_points"));
  }
  if (given("--n-max")) cfg.cylinder_n_max = parse_count(f.n_max, "cylinder.n_max");
  if (given("--hill-k")) cfg.hill_k = parse_count(f.hill_k, "hill.k");
  if (given("--d")) cfg.counterexample_d = parse_real(f.d, "counterexample.d");
  if (given("--stages")) {
    cfg.counterexample_stages = static_cast<unsigned>(parse_count(f.stages, "counterexample.stages"));
  }
  if (given("--out")) cfg.out_path = f.out;
  cfg.validate();
  return cfg;
}

EnsembleSettings ensemble(const Config& cfg, const Flags& f, unsigned threads) {
  EnsembleSettings s;
  s.map = cfg.map();
  s.points = cfg.ensemble_size;
  s.iters = cfg.orbit_iters;
  s.burn_in = cfg.orbit_burn_in;
  s.precision_bits = cfg.orbit_precision_bits;
  s.seed = cfg.ensemble_seed;
  s.ladder.retry = !f.strict_precision;
  s.threads = threads;
  return s;
}

std::optional<std::size_t> hill_order(const Config& cfg) {
  return cfg.hill_k ? std::optional<std::size_t>(cfg.hill_k) : std::nullopt;
}

ExperimentReport run_experiment(const std::string& name, const Config& cfg, const Flags& f,
                                unsigned threads) {
  const EnsembleSettings s = ensemble(cfg, f, threads);
  if (name == "orbit") return run_orbit_summary(s);
  if (name == "ball") {
    const auto grid = geometric_grid(cfg.ball_r_max, cfg.ball_r_min, cfg.ball_grid_points);
    return run_ball_exponent(s, grid).report;
  }
  if (name == "cylinder") {
    return run_cylinder_limit(s, cfg.cylinder_n_min, cfg.cylinder_n_max, hill_order(cfg)).report;
  }
  if (name == "entropy") return run_entropy(s).report;
  if (name == "alpha") return run_alpha(s, hill_order(cfg)).report;
  CounterexampleSpec spec;
  spec.d = cfg.counterexample_d;
  spec.stages = cfg.counterexample_stages;
  spec.seed = cfg.ensemble_seed;
  return run_counterexample(spec, cfg.cylinder_n_max).report;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr)) {
    throw std::runtime_error("SHA-256 failed for " + path.string());
  }
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

void print_verbose(const ExperimentReport& rep) {
  for (const auto& [k, v] : rep.aggregate) std::cerr << rep.experiment << ' ' << k << '=' << v << '\n';
}

int run(const std::string& name, const Flags& f, const CLI::App& app) {
  const Config cfg = resolve_config(f, app);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (app.count("--threads")) {
    threads = static_cast<unsigned>(parse_count(f.threads, "--threads"));
    if (threads == 0) throw ConfigError("--threads", "must be at least 1");
  }

  if (name != "all") {
    ExperimentReport rep = run_experiment(name, cfg, f, threads);
    rep.config_echo = format_config(cfg, -1);
    const fs::path out = cfg.out_path.empty() ? fs::path(name + ".csv") : fs::path(cfg.out_path);
    write_report_csv(rep, out);
    if (f.verbose) print_verbose(rep);
    std::cout << headline(rep) << '\n';
    return kOk;
  }

  const fs::path dir = cfg.out_path.empty() ? fs::path("recurlab-all") : fs::path(cfg.out_path);
  fs::create_directories(dir);
  std::vector<std::string> files;
  write_config(cfg, dir / "config.json");
  files.push_back("config.json");
  for (const char* sub : {"orbit", "ball", "cylinder", "entropy", "alpha", "counterexample"}) {
    ExperimentReport rep = run_experiment(sub, cfg, f, threads);
    rep.config_echo = format_config(cfg, -1);
    const std::string file = std::string(sub) + ".csv";
    write_report_csv(rep, dir / file);
    files.push_back(file);
    if (f.verbose) print_verbose(rep);
    std::cout << sub << ' ' << headline(rep) << '\n';
  }
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  for (const auto& file : files) manifest << sha256_file(dir / file) << "  " << file << '\n';
  if (!manifest) throw std::runtime_error("cannot write " + (dir / "manifest.txt").string());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative recurrence experiments for interval maps"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config_path, "JSON configuration file");
  app.add_option("--map", f.map, "doubling | classic-mp | param-mp");
  app.add_option("--z", f.z, "map exponent (z > 1)");
  app.add_option("--c", f.c, "split point of param-mp, in (0,1)");
  app.add_option("--points", f.points, "ensemble size");
  app.add_option("--iters", f.iters, "orbit length in steps; accepts 1e8");
  app.add_option("--burn-in", f.burn_in, "discarded initial steps");
  app.add_option("--seed", f.seed, "64-bit master seed (default: $RECURLAB_SEED)");
  app.add_option("--r-min", f.r_min, "smallest ball radius");
  app.add_option("--r-max", f.r_max, "largest ball radius");
  app.add_option("--r-points", f.r_points, "radii in the geometric grid");
  app.add_option("--n-max", f.n_max, "largest cylinder length");
  app.add_option("--hill-k", f.hill_k, "Hill order (default sqrt of the sample count)");
  app.add_option("--d", f.d, "counterexample exponent gap in (0, 1/2)");
  app.add_option("--stages", f.stages, "counterexample depth");
  app.add_option("--out", f.out, "output CSV (directory for 'all')");
  app.add_option("--threads", f.threads, "worker threads");
  app.add_flag("--strict-precision", f.strict_precision, "no extended-precision retry");
  app.add_flag("-v,--verbose", f.verbose, "aggregate lines on stderr");

  const std::map<std::string, std::string> subcommands = {
      {"orbit", "orbit statistics per ensemble point"},
      {"ball", "ball return exponent log tau_r / -log r"},
      {"cylinder", "cylinder return limit log R_n / S_n"},
      {"entropy", "induced entropy by the Rokhlin formula"},
      {"alpha", "Hill estimate of the return-time tail index"},
      {"counterexample", "symbolic tower with oscillating occupation exponent"},
      {"all", "every experiment with a shared seed, plus a manifest"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run(name, f, app);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kConfigError;
  } catch (const StagnationError& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kStagnation;
  } catch (const InsufficientData& e) {
    std::cerr << "insufficient data: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
