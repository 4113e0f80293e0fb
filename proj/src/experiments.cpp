#include "recurlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "recurlab/errors.hpp"
#include "recurlab/recurrence.hpp"

namespace recurlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

void echo_ensemble(ExperimentReport& report, const EnsembleSettings& s) {
  report.add_aggregate("map", std::string(to_string(s.map.kind())));
  report.add_aggregate("z", s.map.z());
  report.add_aggregate("c", s.map.c());
  report.add_aggregate("points", num(s.points));
  report.add_aggregate("iters", num(s.iters));
  report.add_aggregate("seed", num(s.seed));
}

void add_summary(ExperimentReport& report, const std::string& prefix, const Summary& s) {
  report.add_aggregate(prefix + "median", s.median);
  report.add_aggregate(prefix + "q1", s.q1);
  report.add_aggregate(prefix + "q3", s.q3);
  report.add_aggregate(prefix + "iqr", s.q3 - s.q1);
  report.add_aggregate(prefix + "count", num(s.count));
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// A point either produced its result or was dropped because the precision
// ladder ran out.
template <class T>
struct PointOutcome {
  std::optional<T> value;
  std::exception_ptr stagnation;
};

template <class T>
void rethrow_if_all_stagnated(const std::vector<PointOutcome<T>>& outcomes) {
  if (outcomes.empty()) return;
  for (const auto& o : outcomes) {
    if (!o.stagnation) return;
  }
  std::rethrow_exception(outcomes.front().stagnation);
}

template <class T, class Fn>
std::vector<PointOutcome<T>> run_points(const EnsembleSettings& settings, Fn&& per_point) {
  std::vector<PointOutcome<T>> outcomes(settings.points);
  parallel_for(settings.points, settings.threads, [&](std::size_t i) {
    try {
      outcomes[i].value = with_precision_ladder(
          settings.orbit_config(i), settings.ladder,
          [&](const OrbitConfig& cfg) { return per_point(i, cfg); });
    } catch (const StagnationError&) {
      outcomes[i].stagnation = std::current_exception();
    }
  });
  rethrow_if_all_stagnated(outcomes);
  return outcomes;
}

// Enough retained return times for the Hill order actually used by the pooled
// estimate: k = hill_k, or sqrt(pooled count) <= sqrt(points * iters).
std::size_t tail_capacity(const EnsembleSettings& s, std::optional<std::size_t> hill_k) {
  if (hill_k) return *hill_k + 1;
  const double bound = static_cast<double>(s.points) * static_cast<double>(s.iters);
  return default_hill_k(static_cast<std::size_t>(std::min(bound, 0x1.0p62))) + 2;
}

TailSample tail_of(std::span<const std::uint64_t> samples, std::size_t capacity) {
  TailSample tail(capacity);
  for (std::uint64_t v : samples) tail.add(static_cast<double>(v));
  return tail;
}

double prediction_alpha(const MapSpec& map) {
  if (!map.infinite_measure()) return kNaN;
  return map.z() > 2.0 ? 1.0 / (map.z() - 1.0) : 1.0;
}

}  // namespace

OrbitConfig EnsembleSettings::orbit_config(std::size_t point_index) const {
  OrbitConfig cfg;
  cfg.map = map;
  cfg.n_iters = iters;
  cfg.burn_in = burn_in;
  cfg.precision_bits = precision_bits;
  cfg.seed = seed;
  cfg.point_index = point_index;
  return cfg;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw InsufficientData("line fit needs at least 2 points");
  const double mx = std::accumulate(x.begin(), x.begin() + n, 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.begin() + n, 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n = n;
  return fit;
}

Summary summarize(std::vector<double> values) {
  if (values.empty()) throw InsufficientData("no values to summarize");
  std::sort(values.begin(), values.end());
  return {quantile(values, 0.5), quantile(values, 0.25), quantile(values, 0.75), values.size()};
}

double top_quartile_median(std::span<const std::size_t> keys, std::span<const double> values) {
  if (keys.empty() || keys.size() != values.size()) {
    throw InsufficientData("plateau needs matching, non-empty keys and values");
  }
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  const std::size_t take = std::max<std::size_t>(1, (keys.size() + 3) / 4);
  std::vector<double> top;
  for (std::size_t i = keys.size() - take; i < keys.size(); ++i) top.push_back(values[order[i]]);
  return summarize(std::move(top)).median;
}

std::vector<double> geometric_grid(double r_max, double r_min, unsigned points) {
  if (points < 2 || !(r_min > 0.0) || !(r_max > r_min)) {
    throw ParameterError("geometric grid needs r_max > r_min > 0 and at least 2 points");
  }
  std::vector<double> grid(points);
  const double step = std::log(r_min / r_max) / static_cast<double>(points - 1);
  for (unsigned k = 0; k < points; ++k) grid[k] = r_max * std::exp(step * k);
  grid.front() = r_max;
  grid.back() = r_min;
  return grid;
}

// ---------------------------------------------------------------------------
// Ball returns
// ---------------------------------------------------------------------------

BallExperiment run_ball_exponent(const EnsembleSettings& settings, std::span<const double> r_grid) {
  if (r_grid.size() < kMinFitPoints) {
    throw ParameterError("ball fit requires at least 3 radii, got " +
                         std::to_string(r_grid.size()));
  }
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    if (!(r_grid[k] > 0.0 && r_grid[k] < 0.25)) {
      throw ParameterError("ball radii must lie in (0, 1/4)");
    }
    if (k > 0 && !(r_grid[k] < r_grid[k - 1] && r_grid[k] >= kMinGridRatio * r_grid[k - 1])) {
      throw ParameterError("ball radii must decrease with consecutive ratios in [0.1, 1)");
    }
  }
  if (settings.points < kMinBallEnsemble) {
    throw ParameterError("ball experiment needs an ensemble of at least 10 points");
  }

  struct PointData {
    double x0;
    std::vector<std::optional<std::uint64_t>> tau;
  };
  const auto outcomes = run_points<PointData>(settings, [&](std::size_t, const OrbitConfig& cfg) {
    RecordMinima records;
    const double x0 = walk_orbit(cfg, [&](std::uint64_t n, int, double, double d) {
      if (n > 0) records.push(n, d);
    });
    PointData data{x0, {}};
    for (double r : r_grid) data.tau.push_back(records.tau(r));
    return data;
  });

  BallExperiment result;
  std::vector<double> neg_log_r;
  for (double r : r_grid) neg_log_r.push_back(-std::log(r));

  std::vector<std::vector<double>> log_tau(r_grid.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].value) {
      ++result.dropped_stagnation;
      continue;
    }
    const PointData& p = *outcomes[i].value;
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
      const double lt = p.tau[k] ? std::log(static_cast<double>(*p.tau[k]))
                                 : std::numeric_limits<double>::infinity();
      log_tau[k].push_back(lt);
      if (p.tau[k]) {
        xs.push_back(neg_log_r[k]);
        ys.push_back(lt);
      }
    }
    if (xs.size() < kMinFitPoints) {
      ++result.dropped_unresolved;
      continue;
    }
    const LineFit fit = least_squares(xs, ys);
    result.rows.push_back({i, p.x0, fit.slope, fit.intercept, fit.n});
  }
  if (result.rows.empty()) {
    throw InsufficientData("no point resolved tau_r on at least 3 radii");
  }

  std::vector<double> slopes;
  for (const auto& row : result.rows) slopes.push_back(row.slope);
  result.per_point = summarize(slopes);

  std::vector<double> cx, cy;
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    auto v = log_tau[k];
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    const double med = quantile(v, 0.5);
    if (std::isfinite(med)) {
      cx.push_back(neg_log_r[k]);
      cy.push_back(med);
    }
  }
  if (cx.size() >= kMinFitPoints) result.median_curve = least_squares(cx, cy);

  ExperimentReport& rep = result.report;
  rep.experiment = "ball";
  rep.header = {"point_index", "x0", "slope", "intercept", "n_resolved"};
  for (const auto& row : result.rows) {
    rep.add_row({num(row.point_index), num(row.x0), num(row.slope), num(row.intercept),
                 num(row.n_resolved)});
  }
  echo_ensemble(rep, settings);
  rep.add_aggregate("r_max", r_grid.front());
  rep.add_aggregate("r_min", r_grid.back());
  rep.add_aggregate("r_points", num(r_grid.size()));
  add_summary(rep, "slope_", result.per_point);
  rep.add_aggregate("median_curve_slope", result.median_curve ? result.median_curve->slope : kNaN);
  rep.add_aggregate("median_curve_radii",
                    num(result.median_curve ? result.median_curve->n : std::size_t{0}));
  rep.add_aggregate("dropped_stagnation", num(result.dropped_stagnation));
  rep.add_aggregate("dropped_unresolved", num(result.dropped_unresolved));
  if (settings.map.kind() == MapKind::Doubling) {
    rep.prediction = 1.0;
    rep.prediction_note = "local dimension 1 of Lebesgue measure";
  } else {
    rep.prediction = settings.map.z() - 1.0;
    rep.prediction_note = "z-1";
  }
  rep.measured = result.median_curve ? result.median_curve->slope : result.per_point.median;
  return result;
}

// ---------------------------------------------------------------------------
// Cylinder returns
// ---------------------------------------------------------------------------

CylinderExperiment run_cylinder_limit(const EnsembleSettings& settings, std::size_t n_min,
                                      std::size_t n_max, std::optional<std::size_t> hill_k) {
  if (n_min < 1 || n_max < n_min) throw ParameterError("cylinder grid needs 1 <= n_min <= n_max");

  const std::size_t capacity = tail_capacity(settings, hill_k);
  struct PointData {
    double x0;
    std::vector<CylinderRow> rows;
    std::size_t resolved_up_to;
    BlockSummary blocks;
    TailSample returns;
  };
  const auto outcomes =
      run_points<PointData>(settings, [&](std::size_t i, const OrbitConfig& cfg) {
        OrbitResult orbit = run_orbit(cfg);
        const Itinerary& it = orbit.itinerary;
        const std::size_t top = std::min(n_max, it.size());
        const ReturnTimeTable table = cylinder_return_times(it, top);
        PointData data{orbit.x0, {}, table.resolved_up_to(), BlockSummary::of(orbit.log_derivative),
                       tail_of(orbit.returns.samples, capacity)};
        for (std::size_t n = n_min; n <= top; ++n) {
          const auto r = table.r(n);
          if (!r) break;
          const std::uint64_t s = it.occupation(n);
          if (s == 0) continue;
          const double sd = static_cast<double>(s);
          data.rows.push_back({i, orbit.x0, n, *r, s, std::log(static_cast<double>(*r)) / sd,
                               std::log(static_cast<double>(*table.rbar(n))) / sd});
        }
        return data;
      });

  CylinderExperiment result;
  BlockSummary pooled_blocks;
  std::uint64_t pooled_steps = 0;
  TailSample pooled_returns(capacity);
  std::vector<std::size_t> resolved_at(n_max + 1, 0);
  std::size_t kept = 0;
  for (const auto& o : outcomes) {
    if (!o.value) {
      ++result.dropped_stagnation;
      continue;
    }
    ++kept;
    pooled_blocks.merge(o.value->blocks);
    pooled_steps += settings.iters;
    pooled_returns.merge(o.value->returns);
    for (std::size_t n = n_min; n <= std::min(n_max, o.value->resolved_up_to); ++n) ++resolved_at[n];
    result.rows.insert(result.rows.end(), o.value->rows.begin(), o.value->rows.end());
  }
  // Largest n resolved along at least kPlateauCoverage of the orbits: beyond
  // it the resolved R_n are a selection of unusually early returns.
  for (std::size_t n = n_min; n <= n_max; ++n) {
    if (static_cast<double>(resolved_at[n]) >= kPlateauCoverage * static_cast<double>(kept)) {
      result.n_cap = n;
    }
  }
  for (const auto& o : outcomes) {
    if (!o.value) continue;
    std::vector<std::size_t> ns;
    std::vector<double> ratio, ratio_bar;
    for (const auto& row : o.value->rows) {
      if (row.n > result.n_cap) continue;
      ns.push_back(row.n);
      ratio.push_back(row.ratio);
      ratio_bar.push_back(row.ratio_bar);
    }
    if (ns.size() < kMinFitPoints) {
      ++result.dropped_unresolved;
      continue;
    }
    const std::size_t i = o.value->rows.front().point_index;
    result.points.push_back({i, o.value->x0, ns.size(), top_quartile_median(ns, ratio),
                             top_quartile_median(ns, ratio_bar)});
  }
  if (result.points.empty()) {
    throw InsufficientData("no point resolved R_n for at least 3 values of n");
  }

  result.entropy = entropy_rokhlin(pooled_blocks, pooled_steps);
  if (settings.map.infinite_measure()) {
    result.alpha = alpha_hill(pooled_returns, hill_k);
    result.alpha_used = result.alpha->alpha_hat;
  } else {
    try {
      result.alpha = alpha_hill(pooled_returns, hill_k);
    } catch (const InsufficientData&) {
    }
    result.alpha_used = 1.0;
  }

  std::vector<double> plateaus, plateaus_bar;
  for (const auto& p : result.points) {
    plateaus.push_back(p.plateau);
    plateaus_bar.push_back(p.plateau_bar);
  }
  result.plateau = summarize(plateaus);
  result.plateau_bar = summarize(plateaus_bar);

  ExperimentReport& rep = result.report;
  rep.experiment = "cylinder";
  rep.header = {"point_index", "x0", "n", "R_n", "S_n", "ratio"};
  for (const auto& row : result.rows) {
    rep.add_row({num(row.point_index), num(row.x0), num(row.n), num(row.r_n), num(row.s_n),
                 num(row.ratio)});
  }
  echo_ensemble(rep, settings);
  rep.add_aggregate("n_min", num(n_min));
  rep.add_aggregate("n_max", num(n_max));
  rep.add_aggregate("n_cap", num(result.n_cap));
  add_summary(rep, "plateau_", result.plateau);
  add_summary(rep, "plateau_bar_", result.plateau_bar);
  rep.add_aggregate("h_induced", result.entropy.h_induced);
  rep.add_aggregate("h_induced_std_error", result.entropy.std_error);
  rep.add_aggregate("alpha_hat", result.alpha ? result.alpha->alpha_hat : kNaN);
  rep.add_aggregate("alpha_used", result.alpha_used);
  rep.add_aggregate("rbar_ratio", result.plateau_bar.median / result.entropy.h_induced);
  rep.add_aggregate("dropped_stagnation", num(result.dropped_stagnation));
  rep.add_aggregate("dropped_unresolved", num(result.dropped_unresolved));
  rep.prediction = result.entropy.h_induced / result.alpha_used;
  rep.prediction_note = settings.map.infinite_measure() ? "h_induced / alpha_hat (measured)"
                                                        : "h_induced (alpha = 1)";
  rep.measured = result.plateau.median;
  return result;
}

// ---------------------------------------------------------------------------
// Entropy, tail exponent, orbit summary
// ---------------------------------------------------------------------------

EntropyExperiment run_entropy(const EnsembleSettings& settings) {
  struct PointData {
    double x0;
    BlockSummary blocks;
  };
  const auto outcomes = run_points<PointData>(settings, [&](std::size_t, const OrbitConfig& cfg) {
    OrbitOutputs want;
    want.itinerary = false;
    want.returns = false;
    OrbitResult orbit = run_orbit(cfg, want);
    return PointData{orbit.x0, BlockSummary::of(orbit.log_derivative)};
  });

  EntropyExperiment result;
  BlockSummary pooled;
  std::uint64_t pooled_steps = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].value) {
      ++result.dropped;
      continue;
    }
    const PointData& p = *outcomes[i].value;
    pooled.merge(p.blocks);
    pooled_steps += settings.iters;
    if (p.blocks.count < kMinEntropyVisits) {
      ++result.dropped;
      continue;
    }
    result.points.emplace_back(i, entropy_rokhlin(p.blocks, settings.iters));
    result.x0.push_back(p.x0);
  }
  result.pooled = entropy_rokhlin(pooled, pooled_steps);

  ExperimentReport& rep = result.report;
  rep.experiment = "entropy";
  rep.header = {"point_index", "x0", "h_induced", "visits", "std_error"};
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const auto& [i, e] = result.points[k];
    rep.add_row({num(i), num(result.x0[k]), num(e.h_induced), num(e.visits), num(e.std_error)});
  }
  echo_ensemble(rep, settings);
  rep.add_aggregate("pooled_visits", num(result.pooled.visits));
  rep.add_aggregate("pooled_std_error", result.pooled.std_error);
  rep.add_aggregate("dropped", num(result.dropped));
  if (settings.map.kind() == MapKind::Doubling) {
    rep.prediction = 2.0 * std::log(2.0);
    rep.prediction_note = "log 2 / mu(I_1)";
  } else {
    rep.prediction_note = "no closed form";
  }
  rep.measured = result.pooled.h_induced;
  return result;
}

AlphaExperiment run_alpha(const EnsembleSettings& settings, std::optional<std::size_t> hill_k) {
  const std::size_t capacity = tail_capacity(settings, hill_k);
  struct PointData {
    double x0;
    TailSample returns;
  };
  const auto outcomes = run_points<PointData>(settings, [&](std::size_t, const OrbitConfig& cfg) {
    OrbitOutputs want;
    want.itinerary = false;
    want.log_derivative = false;
    OrbitResult orbit = run_orbit(cfg, want);
    return PointData{orbit.x0, tail_of(orbit.returns.samples, capacity)};
  });

  AlphaExperiment result{TailSample(capacity), {}, {}};
  ExperimentReport& rep = result.report;
  rep.experiment = "alpha";
  rep.header = {"point_index", "x0", "returns", "max_return"};
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].value) {
      ++dropped;
      continue;
    }
    const PointData& p = *outcomes[i].value;
    const auto top = p.returns.descending();
    rep.add_row({num(i), num(p.x0), num(p.returns.count()), num(top.empty() ? 0.0 : top.front())});
    result.tail.merge(p.returns);
  }
  result.alpha = alpha_hill(result.tail, hill_k);

  echo_ensemble(rep, settings);
  rep.add_aggregate("samples", num(result.tail.count()));
  rep.add_aggregate("k", num(result.alpha.k_used));
  rep.add_aggregate("ci_low", result.alpha.ci_low);
  rep.add_aggregate("ci_high", result.alpha.ci_high);
  rep.add_aggregate("light_tail", result.alpha.light_tail ? "true" : "false");
  rep.add_aggregate("dropped_stagnation", num(dropped));
  rep.prediction = prediction_alpha(settings.map);
  if (!settings.map.infinite_measure()) {
    rep.prediction_note = "finite measure: no power tail";
  } else if (settings.map.z() > 2.0) {
    rep.prediction_note = "1/(z-1)";
  } else {
    rep.prediction_note = "z=2 diagnostic: index 1 with logarithmic corrections";
  }
  rep.measured = result.alpha.alpha_hat;
  return result;
}

ExperimentReport run_orbit_summary(const EnsembleSettings& settings) {
  struct PointData {
    double x0;
    unsigned bits;
    std::uint64_t visits;
    std::size_t returns;
    double log_derivative;
  };
  const auto outcomes = run_points<PointData>(settings, [&](std::size_t, const OrbitConfig& cfg) {
    OrbitResult orbit = run_orbit(cfg);
    return PointData{orbit.x0, orbit.precision_bits, orbit.itinerary.occupation(cfg.n_iters),
                     orbit.returns.count(), orbit.log_derivative.total()};
  });

  ExperimentReport rep;
  rep.experiment = "orbit";
  rep.header = {"point_index", "x0", "precision_bits", "steps", "visits", "returns",
                "log_derivative_sum"};
  std::uint64_t visits = 0, steps = 0;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].value) {
      ++dropped;
      continue;
    }
    const PointData& p = *outcomes[i].value;
    rep.add_row({num(i), num(p.x0), num(std::uint64_t{p.bits}), num(settings.iters),
                 num(p.visits), num(p.returns), num(p.log_derivative)});
    visits += p.visits;
    steps += settings.iters;
  }
  echo_ensemble(rep, settings);
  rep.add_aggregate("dropped_stagnation", num(dropped));
  // Occupation frequency of A: mu(I_1) for the doubling map, 0 in infinite measure.
  if (settings.map.kind() == MapKind::Doubling) {
    rep.prediction = 0.5;
    rep.prediction_note = "mu(I_1)";
  } else if (settings.map.infinite_measure()) {
    rep.prediction = 0.0;
    rep.prediction_note = "S_n/n -> 0 in infinite measure";
  }
  rep.measured = steps ? static_cast<double>(visits) / static_cast<double>(steps) : kNaN;
  return rep;
}

// ---------------------------------------------------------------------------
// Counterexample
// ---------------------------------------------------------------------------

Oscillation return_ratio_oscillation(const Itinerary& sequence, std::size_t n_max) {
  const ReturnTimeTable table = cylinder_return_times(sequence, std::min(n_max, sequence.size()));
  Oscillation osc;
  osc.max_ratio = -std::numeric_limits<double>::infinity();
  osc.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= table.n_max(); ++n) {
    const auto r = table.r(n);
    if (!r) break;
    const std::uint64_t s = sequence.occupation(n);
    if (*r < 2 || s == 0) continue;
    const double ratio = std::log(static_cast<double>(*r)) / static_cast<double>(s);
    ++osc.resolved;
    if (ratio > osc.max_ratio) {
      osc.max_ratio = ratio;
      osc.argmax = n;
    }
    if (ratio < osc.min_ratio) {
      osc.min_ratio = ratio;
      osc.argmin = n;
    }
  }
  if (osc.resolved < 2) throw InsufficientData("fewer than 2 resolved return ratios");
  return osc;
}

CounterexampleExperiment run_counterexample(const CounterexampleSpec& spec, std::size_t n_max) {
  CounterexampleExperiment result;
  result.construction = generate_counterexample(spec);
  const Itinerary& seq = result.construction.sequence;
  result.oscillation = return_ratio_oscillation(seq, n_max ? n_max : seq.size() / 2);

  ExperimentReport& rep = result.report;
  rep.experiment = "counterexample";
  rep.header = {"kind", "stage", "n", "S_n", "log_ratio"};
  for (const auto& c : result.construction.pad_checkpoints) {
    rep.add_row({"pad", num(std::uint64_t{c.stage}), num(c.n), num(c.occupation),
                 num(c.log_ratio)});
  }
  for (const auto& c : result.construction.witnesses) {
    rep.add_row({"witness", num(std::uint64_t{c.stage}), num(c.n), num(c.occupation),
                 num(c.log_ratio)});
  }
  rep.add_aggregate("d", spec.d);
  rep.add_aggregate("stages", num(std::uint64_t{spec.stages}));
  rep.add_aggregate("seed", num(spec.seed));
  rep.add_aggregate("length", num(seq.size()));
  for (std::size_t i = 0; i < result.construction.stages.size(); ++i) {
    const StageLayout& s = result.construction.stages[i];
    const std::string p = "stage" + std::to_string(i + 1) + "_";
    rep.add_aggregate(p + "data", num(s.data));
    rep.add_aggregate(p + "length", num(s.length));
    rep.add_aggregate(p + "repeats", num(s.repeats));
  }
  const Oscillation& o = result.oscillation;
  rep.add_aggregate("ratio_max", o.max_ratio);
  rep.add_aggregate("ratio_max_n", num(o.argmax));
  rep.add_aggregate("ratio_min", o.min_ratio);
  rep.add_aggregate("ratio_min_n", num(o.argmin));
  rep.add_aggregate("ratio_resolved", num(o.resolved));
  rep.prediction = 1.0 + spec.d;
  rep.prediction_note = "lower bound on max/min of log R_n / S_n";
  rep.measured = o.spread();
  return result;
}

}  // namespace recurlab
