#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <vector>

#include "recurlab/counterexample.hpp"
#include "recurlab/estimators.hpp"
#include "recurlab/maps.hpp"
#include "recurlab/orbit.hpp"
#include "recurlab/report.hpp"

namespace recurlab {

/// Ensemble of orbits started at independent uniform points; point i uses the
/// RNG stream (seed, i).
struct EnsembleSettings {
  MapSpec map = MapSpec::classic_mp(3.0);
  std::size_t points = 10;
  std::uint64_t iters = 1'000'000;
  std::uint64_t burn_in = 0;
  unsigned precision_bits = kBinary64Bits;
  std::uint64_t seed = 0;
  PrecisionLadder ladder;
  // Worker threads; results never depend on this.
  unsigned threads = 1;

  OrbitConfig orbit_config(std::size_t point_index) const;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception (lowest index) is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope x; InsufficientData when fewer
// than two points or all x are equal.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

struct Summary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::size_t count = 0;
};

// Quartiles by linear interpolation; InsufficientData on an empty input.
Summary summarize(std::vector<double> values);

// Median of the values with the largest keys: the top quartile (at least one
// value) after sorting by key.
double top_quartile_median(std::span<const std::size_t> keys, std::span<const double> values);

// r_max, ..., r_min, equally spaced in log r.
std::vector<double> geometric_grid(double r_max, double r_min, unsigned points);

// Lower bound on r_{k+1} / r_k accepted by the ball experiment.
inline constexpr double kMinGridRatio = 0.1;
inline constexpr std::size_t kMinFitPoints = 3;
inline constexpr std::size_t kMinBallEnsemble = 10;

struct BallRow {
  std::size_t point_index = 0;
  double x0 = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n_resolved = 0;
};

struct BallExperiment {
  std::vector<BallRow> rows;
  std::size_t dropped_stagnation = 0;
  std::size_t dropped_unresolved = 0;
  Summary per_point;
  // Fit of the ensemble-median curve r -> median_i log tau_r(x_i), with
  // unresolved tau counted as +infinity; radii where the median is not
  // resolved are left out.
  std::optional<LineFit> median_curve;
  ExperimentReport report;
};

/// Slope of log tau_r against -log r for every point of the ensemble.
/// Grid: strictly decreasing radii in (0, 1/4), at least 3 of them, with
/// consecutive ratios >= kMinGridRatio.
BallExperiment run_ball_exponent(const EnsembleSettings& settings, std::span<const double> r_grid);

struct CylinderRow {
  std::size_t point_index = 0;
  double x0 = 0.0;
  std::size_t n = 0;
  std::uint64_t r_n = 0;
  std::uint64_t s_n = 0;
  // log R_n / S_n
  double ratio = 0.0;
  // log \bar R_n / S_n
  double ratio_bar = 0.0;
};

struct CylinderPoint {
  std::size_t point_index = 0;
  double x0 = 0.0;
  std::size_t resolved = 0;
  double plateau = 0.0;
  double plateau_bar = 0.0;
};

inline constexpr double kPlateauCoverage = 0.9;

struct CylinderExperiment {
  std::vector<CylinderRow> rows;
  // Plateau rows are limited to n <= n_cap (0 when no n qualifies).
  std::size_t n_cap = 0;
  std::vector<CylinderPoint> points;
  std::size_t dropped_stagnation = 0;
  std::size_t dropped_unresolved = 0;
  EntropyEstimate entropy;
  std::optional<AlphaEstimate> alpha;
  // alpha_hat for infinite-measure maps, 1 otherwise.
  double alpha_used = 1.0;
  Summary plateau;
  Summary plateau_bar;
  ExperimentReport report;
};

/// log R_n / S_n(1_A) for n in [n_min, n_max] along every orbit. The
/// per-point plateau is the median over the top quartile of the resolved n up
/// to n_cap, the largest n resolved on at least 90% of the orbits; the
/// prediction h_induced / alpha uses the entropy and Hill estimates pooled
/// over the ensemble.
CylinderExperiment run_cylinder_limit(const EnsembleSettings& settings, std::size_t n_min,
                                      std::size_t n_max,
                                      std::optional<std::size_t> hill_k = std::nullopt);

struct EntropyExperiment {
  std::vector<std::pair<std::size_t, EntropyEstimate>> points;
  std::vector<double> x0;
  std::size_t dropped = 0;
  EntropyEstimate pooled;
  ExperimentReport report;
};

EntropyExperiment run_entropy(const EnsembleSettings& settings);

struct AlphaExperiment {
  // Largest pooled return times and the pooled count.
  TailSample tail;
  AlphaEstimate alpha;
  ExperimentReport report;
};

// Hill estimate on the return times to A pooled over the ensemble.
AlphaExperiment run_alpha(const EnsembleSettings& settings,
                          std::optional<std::size_t> hill_k = std::nullopt);

ExperimentReport run_orbit_summary(const EnsembleSettings& settings);

struct Oscillation {
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  double min_ratio = 0.0;
  std::size_t argmin = 0;
  std::size_t resolved = 0;
  double spread() const { return max_ratio / min_ratio; }
};

// Range of log R_n / S_n over the n with R_n resolved, R_n >= 2 and S_n >= 1.
Oscillation return_ratio_oscillation(const Itinerary& sequence, std::size_t n_max);

struct CounterexampleExperiment {
  Counterexample construction;
  Oscillation oscillation;
  ExperimentReport report;
};

// n_max = 0 uses half the sequence length.
CounterexampleExperiment run_counterexample(const CounterexampleSpec& spec, std::size_t n_max = 0);

}  // namespace recurlab

#include "recurlab/detail/parallel.hpp"
