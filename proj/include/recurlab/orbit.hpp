#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recurlab/errors.hpp"
#include "recurlab/extended_float.hpp"
#include "recurlab/itinerary.hpp"
#include "recurlab/maps.hpp"
#include "recurlab/rng.hpp"

namespace recurlab {

inline constexpr unsigned kBinary64Bits = 53;

struct OrbitConfig {
  MapSpec map = MapSpec::classic_mp(3.0);
  std::uint64_t n_iters = 1;
  std::uint64_t burn_in = 0;
  // 53 selects binary64; 64 or more selects MPFR with that many mantissa bits.
  unsigned precision_bits = kBinary64Bits;
  std::uint64_t seed = 0;
  std::uint64_t point_index = 0;
  // Overrides the random initial point (tests, reproductions).
  std::optional<double> forced_x0;

  void validate() const;
};

/// First-return times to A = I_1 between consecutive visits.
struct ReturnSampleSet {
  std::vector<std::uint64_t> samples;
  std::optional<std::uint64_t> first_visit;
  std::optional<std::uint64_t> last_visit;

  std::size_t count() const noexcept { return samples.size(); }
};

/// Birkhoff sums of log T' cut at the visits to A: block k runs from the k-th
/// visit up to (not including) the next one; `lead` covers the steps before
/// the first visit. Sum of everything = S_n(log T'), number of blocks = S_n(1_A).
struct LogDerivativeBlocks {
  double lead = 0.0;
  std::vector<double> blocks;

  double total() const;
  void append(const LogDerivativeBlocks& other);
};

struct OrbitOutputs {
  bool itinerary = true;
  bool returns = true;
  bool log_derivative = true;
  // Full per-step streams; O(n) doubles, meant for short runs.
  bool distances = false;
  bool log_derivative_prefix = false;
};

struct OrbitResult {
  double x0 = 0.0;
  Itinerary itinerary;
  ReturnSampleSet returns;
  LogDerivativeBlocks log_derivative;
  // distances[i] = |T^(i+1) x0 - x0|.
  std::vector<double> distances;
  // log_derivative_prefix[n] = sum_{k<n} log T'(T^k x0), n = 0..n_iters.
  std::vector<double> log_derivative_prefix;
  unsigned precision_bits = kBinary64Bits;
};

OrbitResult run_orbit(const OrbitConfig& cfg, const OrbitOutputs& outputs = {});

struct PrecisionLadder {
  bool retry = true;
  unsigned retry_bits = 128;
};

/// Calls fn(cfg); on StagnationError reruns once at the ladder's extended
/// precision. A second stagnation propagates.
template <class Fn>
auto with_precision_ladder(OrbitConfig cfg, const PrecisionLadder& ladder, Fn&& fn)
    -> decltype(fn(cfg)) {
  try {
    return fn(cfg);
  } catch (const StagnationError&) {
    if (!ladder.retry || cfg.precision_bits >= ladder.retry_bits) throw;
  }
  cfg.precision_bits = ladder.retry_bits;
  return fn(cfg);
}

OrbitResult run_orbit_laddered(const OrbitConfig& cfg, const PrecisionLadder& ladder,
                               const OrbitOutputs& outputs = {});

/// S_n(f) / S_n(g) from prefix sums (index n holds the sum of the first n terms).
double hopf_ratio(std::span<const double> f_prefix, std::span<const double> g_prefix,
                  std::size_t n);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// Orbit engine. walk_orbit(cfg, visit) calls visit(n, symbol, x, distance) for
// n = 0 .. n_iters-1 where x = T^n x0 (rounded to double) and
// distance = |T^n x0 - x0| computed in the working precision. x0 is the point
// reached after burn_in steps. Returns x0.
//
// The doubling map is iterated exactly as a shift on the binary expansion of
// x0, whose digits come from the point's RNG stream; the MP family runs in
// binary64 or MPFR.
// ---------------------------------------------------------------------------

namespace detail {

double initial_point(const OrbitConfig& cfg);

// Digit source for the doubling map: the binary expansion of x0, 64 digits per
// word, most significant first.
class BinaryExpansion {
 public:
  explicit BinaryExpansion(const OrbitConfig& cfg);

  // Digits [pos, pos + 64) of x0 as a word.
  std::uint64_t window() const noexcept {
    return offset_ == 0 ? hi_ : (hi_ << offset_) | (lo_ >> (64u - offset_));
  }
  void shift() {
    if (++offset_ == 64) {
      offset_ = 0;
      hi_ = lo_;
      lo_ = next_word();
    }
  }

 private:
  std::uint64_t next_word();

  SplitMix64 rng_;
  std::vector<std::uint64_t> forced_;
  std::size_t next_forced_ = 0;
  bool use_forced_ = false;
  std::uint64_t hi_ = 0;
  std::uint64_t lo_ = 0;
  unsigned offset_ = 0;
};

template <class Visitor>
double walk_doubling(const OrbitConfig& cfg, Visitor& visit) {
  BinaryExpansion digits(cfg);
  for (std::uint64_t b = 0; b < cfg.burn_in; ++b) digits.shift();
  const std::uint64_t w0 = digits.window();
  for (std::uint64_t n = 0; n < cfg.n_iters; ++n) {
    const std::uint64_t w = digits.window();
    const std::uint64_t diff = w > w0 ? w - w0 : w0 - w;
    visit(n, static_cast<int>(w >> 63), static_cast<double>(w >> 11) * 0x1.0p-53,
          static_cast<double>(diff) * 0x1.0p-64);
    digits.shift();
  }
  return static_cast<double>(w0 >> 11) * 0x1.0p-53;
}

inline double checked_step(const MapSpec& m, double x, std::uint64_t step) {
  const double next = m.eval_unchecked(x);
  if ((next == x || next == 0.0) && x > 0.0) throw StagnationError(x, step, kBinary64Bits);
  return next;
}

template <class Visitor>
double walk_binary64(const OrbitConfig& cfg, Visitor& visit) {
  const MapSpec& m = cfg.map;
  double x = initial_point(cfg);
  for (std::uint64_t b = 0; b < cfg.burn_in; ++b) x = checked_step(m, x, b);
  const double x0 = x;
  const double c = m.c();
  for (std::uint64_t n = 0;;) {
    visit(n, x < c ? 0 : 1, x, std::fabs(x - x0));
    if (++n == cfg.n_iters) break;
    x = checked_step(m, x, cfg.burn_in + n - 1);
  }
  return x0;
}

class ExtendedStepper {
 public:
  ExtendedStepper(const MapSpec& m, unsigned bits);
  // x <- T(x); throws StagnationError when the state is lost.
  void step(ExtendedFloat& x, std::uint64_t step_index);
  bool in_left(const ExtendedFloat& x) const { return mpfr_less_p(x.get(), c_.get()) != 0; }
  double distance(const ExtendedFloat& x, const ExtendedFloat& x0);

 private:
  unsigned bits_;
  bool integral_z_;
  unsigned long z_int_;
  ExtendedFloat z_;
  ExtendedFloat c_;
  ExtendedFloat one_minus_c_;
  ExtendedFloat a_;
  ExtendedFloat below_one_;
  ExtendedFloat tmp_;
  ExtendedFloat next_;
};

template <class Visitor>
double walk_extended(const OrbitConfig& cfg, Visitor& visit) {
  ExtendedStepper stepper(cfg.map, cfg.precision_bits);
  ExtendedFloat x(cfg.precision_bits, initial_point(cfg));
  for (std::uint64_t b = 0; b < cfg.burn_in; ++b) stepper.step(x, b);
  const ExtendedFloat x0 = x;
  for (std::uint64_t n = 0;;) {
    visit(n, stepper.in_left(x) ? 0 : 1, x.to_double(), stepper.distance(x, x0));
    if (++n == cfg.n_iters) break;
    stepper.step(x, cfg.burn_in + n - 1);
  }
  return x0.to_double();
}

}  // namespace detail

template <class Visitor>
double walk_orbit(const OrbitConfig& cfg, Visitor&& visit) {
  cfg.validate();
  if (cfg.map.kind() == MapKind::Doubling) return detail::walk_doubling(cfg, visit);
  if (cfg.precision_bits == kBinary64Bits) return detail::walk_binary64(cfg, visit);
  return detail::walk_extended(cfg, visit);
}

/// Accumulates sum log T' along an orbit. Factors close to 1 go through a
/// short log1p series; the rest are multiplied and logged when the running
/// product gets large, so a log is taken only every few hundred steps.
class LogDerivativeAccumulator {
 public:
  explicit LogDerivativeAccumulator(const MapSpec& m) : map_(m) {}

  void add(double x) noexcept {
    const double delta = map_.derivative_unchecked(x) - 1.0;
    if (delta < 1e-4) {
      small_.add(delta * (1.0 - delta * (0.5 - delta / 3.0)));
    } else {
      product_ *= 1.0 + delta;
      if (product_ > 1e250) flush_product();
    }
  }

  // Returns the sum since the last take() and resets.
  double take() noexcept {
    flush_product();
    const double v = flushed_.value() + small_.value();
    flushed_ = CompensatedSum{};
    small_ = CompensatedSum{};
    return v;
  }

 private:
  void flush_product() noexcept {
    if (product_ != 1.0) flushed_.add(std::log(product_));
    product_ = 1.0;
  }

  // The orbit engine computes with the exact map; use its derivative.
  MapSpec map_;
  double product_ = 1.0;
  CompensatedSum small_;
  CompensatedSum flushed_;
};

}  // namespace recurlab
