#include "recurlab/orbit.hpp"

#include <limits>
#include <string>

namespace recurlab {

void OrbitConfig::validate() const {
  if (n_iters < 1) throw ParameterError("orbit needs n_iters >= 1");
  if (precision_bits != kBinary64Bits && precision_bits < 64) {
    throw ParameterError("precision must be 53 (binary64) or at least 64 mantissa bits, got " +
                         std::to_string(precision_bits));
  }
  if (forced_x0 && !(*forced_x0 >= 0.0 && *forced_x0 < 1.0)) {
    throw DomainError("forced initial point outside [0,1)");
  }
}

double LogDerivativeBlocks::total() const {
  CompensatedSum s;
  s.add(lead);
  for (double b : blocks) s.add(b);
  return s.value();
}

void LogDerivativeBlocks::append(const LogDerivativeBlocks& other) {
  lead += other.lead;
  blocks.insert(blocks.end(), other.blocks.begin(), other.blocks.end());
}

namespace detail {

double initial_point(const OrbitConfig& cfg) {
  if (cfg.forced_x0) return *cfg.forced_x0;
  auto rng = SplitMix64::for_point(cfg.seed, cfg.point_index);
  return rng.uniform();
}

BinaryExpansion::BinaryExpansion(const OrbitConfig& cfg)
    : rng_(SplitMix64::for_point(cfg.seed, cfg.point_index)) {
  if (cfg.forced_x0) {
    // Exact digits of the double; a dyadic rational, so all later digits are 0.
    use_forced_ = true;
    int exponent = 0;
    const double frac = std::frexp(*cfg.forced_x0, &exponent);
    if (frac != 0.0) {
      const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
      // x0 = mantissa * 2^(exponent - 53); mantissa bit j sits at digit 53 - exponent - j.
      const int last_digit = 53 - exponent;
      forced_.assign(static_cast<std::size_t>(last_digit / 64 + 1), 0);
      for (int j = 0; j < 53; ++j) {
        if ((mantissa >> j) & 1u) {
          const int digit = last_digit - j;  // 1-based
          const int word = (digit - 1) / 64;
          const int bit = 63 - (digit - 1) % 64;
          forced_[static_cast<std::size_t>(word)] |= std::uint64_t{1} << bit;
        }
      }
    }
  }
  hi_ = next_word();
  lo_ = next_word();
}

std::uint64_t BinaryExpansion::next_word() {
  if (use_forced_) return next_forced_ < forced_.size() ? forced_[next_forced_++] : 0;
  return rng_();
}

ExtendedStepper::ExtendedStepper(const MapSpec& m, unsigned bits)
    : bits_(bits),
      integral_z_(m.z() == std::floor(m.z()) && m.z() <= 64.0),
      z_int_(static_cast<unsigned long>(m.z())),
      z_(bits, m.z()),
      c_(bits, m.c()),
      one_minus_c_(bits),
      a_(bits),
      below_one_(bits),
      tmp_(bits),
      next_(bits) {
  mpfr_ui_sub(one_minus_c_.get(), 1, c_.get(), MPFR_RNDN);
  // a = (1 - c) / c^z
  if (integral_z_) {
    mpfr_pow_ui(tmp_.get(), c_.get(), z_int_, MPFR_RNDN);
  } else {
    mpfr_pow(tmp_.get(), c_.get(), z_.get(), MPFR_RNDN);
  }
  mpfr_div(a_.get(), one_minus_c_.get(), tmp_.get(), MPFR_RNDN);
  // 1 - 2^-bits
  mpfr_set_ui(below_one_.get(), 1, MPFR_RNDN);
  mpfr_nextbelow(below_one_.get());
}

void ExtendedStepper::step(ExtendedFloat& x, std::uint64_t step_index) {
  if (in_left(x)) {
    if (integral_z_) {
      mpfr_pow_ui(tmp_.get(), x.get(), z_int_, MPFR_RNDN);
    } else {
      mpfr_pow(tmp_.get(), x.get(), z_.get(), MPFR_RNDN);
    }
    mpfr_mul(tmp_.get(), tmp_.get(), a_.get(), MPFR_RNDN);
    mpfr_add(next_.get(), x.get(), tmp_.get(), MPFR_RNDN);
  } else {
    mpfr_sub(tmp_.get(), x.get(), c_.get(), MPFR_RNDN);
    mpfr_div(next_.get(), tmp_.get(), one_minus_c_.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(next_.get(), 1) >= 0) mpfr_set(next_.get(), below_one_.get(), MPFR_RNDN);
  }
  if (mpfr_sgn(x.get()) > 0 && (mpfr_equal_p(next_.get(), x.get()) || mpfr_zero_p(next_.get()))) {
    throw StagnationError(x.to_double(), step_index, bits_);
  }
  x.swap(next_);
}

double ExtendedStepper::distance(const ExtendedFloat& x, const ExtendedFloat& x0) {
  mpfr_sub(tmp_.get(), x.get(), x0.get(), MPFR_RNDN);
  return std::fabs(mpfr_get_d(tmp_.get(), MPFR_RNDN));
}

}  // namespace detail

namespace {

class OrbitRecorder {
 public:
  OrbitRecorder(const OrbitConfig& cfg, const OrbitOutputs& outputs, OrbitResult& out)
      : outputs_(outputs), out_(out), map_(cfg.map), logd_(cfg.map) {
    if (outputs.itinerary) out.itinerary.reserve(cfg.n_iters);
    if (outputs.distances) out.distances.reserve(cfg.n_iters - 1);
    if (outputs.log_derivative_prefix) {
      out.log_derivative_prefix.reserve(cfg.n_iters + 1);
      out.log_derivative_prefix.push_back(0.0);
    }
  }

  void operator()(std::uint64_t n, int symbol, double x, double distance) {
    if (outputs_.itinerary) out_.itinerary.push_back(static_cast<std::uint8_t>(symbol));
    if (outputs_.distances && n > 0) out_.distances.push_back(distance);
    if (symbol == 1) {
      if (outputs_.returns) {
        auto& r = out_.returns;
        if (r.last_visit) {
          r.samples.push_back(n - *r.last_visit);
        } else {
          r.first_visit = n;
        }
        r.last_visit = n;
      }
      if (outputs_.log_derivative) close_block();
    }
    if (outputs_.log_derivative) logd_.add(x);
    if (outputs_.log_derivative_prefix) {
      prefix_.add(std::log(map_.derivative_unchecked(x)));
      out_.log_derivative_prefix.push_back(prefix_.value());
    }
  }

  void finish() {
    if (outputs_.log_derivative) close_block();
  }

 private:
  void close_block() {
    const double v = logd_.take();
    if (in_block_) {
      out_.log_derivative.blocks.push_back(v);
    } else {
      out_.log_derivative.lead = v;
      in_block_ = true;
    }
  }

  const OrbitOutputs& outputs_;
  OrbitResult& out_;
  MapSpec map_;
  LogDerivativeAccumulator logd_;
  CompensatedSum prefix_;
  bool in_block_ = false;
};

}  // namespace

OrbitResult run_orbit(const OrbitConfig& cfg, const OrbitOutputs& outputs) {
  OrbitResult out;
  OrbitRecorder recorder(cfg, outputs, out);
  out.x0 = walk_orbit(cfg, recorder);
  recorder.finish();
  out.precision_bits = cfg.map.kind() == MapKind::Doubling ? kBinary64Bits : cfg.precision_bits;
  return out;
}

OrbitResult run_orbit_laddered(const OrbitConfig& cfg, const PrecisionLadder& ladder,
                               const OrbitOutputs& outputs) {
  return with_precision_ladder(cfg, ladder,
                               [&](const OrbitConfig& c) { return run_orbit(c, outputs); });
}

double hopf_ratio(std::span<const double> f_prefix, std::span<const double> g_prefix,
                  std::size_t n) {
  if (n >= f_prefix.size() || n >= g_prefix.size()) {
    throw std::out_of_range("hopf_ratio: n beyond prefix-sum length");
  }
  if (g_prefix[n] == 0.0) {
    throw UndefinedRatio("hopf_ratio: denominator sum S_" + std::to_string(n) + "(g) is zero");
  }
  return f_prefix[n] / g_prefix[n];
}

}  // namespace recurlab
