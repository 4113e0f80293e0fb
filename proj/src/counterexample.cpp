#include "recurlab/counterexample.hpp"

#include <cmath>
#include <string>

#include "recurlab/errors.hpp"
#include "recurlab/rng.hpp"

namespace recurlab {

namespace {

double log_ratio(std::uint64_t s, std::uint64_t n) {
  return std::log(static_cast<double>(s)) / std::log(static_cast<double>(n));
}

// S > n^(1/2 + d), compared in logs.
bool exceeds(std::uint64_t s, std::uint64_t n, double d) {
  return std::log(static_cast<double>(s)) > (0.5 + d) * std::log(static_cast<double>(n));
}

std::uint64_t padded_length(std::uint64_t data, std::uint64_t unpadded, const CounterexampleSpec& spec) {
  if (!spec.terminal_pads) return unpadded;
  const double target = std::ceil(static_cast<double>(data) * static_cast<double>(data) *
                                  (1.0 + spec.pad_margin));
  if (target > static_cast<double>(spec.max_length)) {
    throw ParameterError("counterexample pad length " + std::to_string(target) +
                         " exceeds the maximum sequence length " +
                         std::to_string(spec.max_length));
  }
  return std::max(unpadded, static_cast<std::uint64_t>(target));
}

void emit_stage(const std::vector<StageLayout>& plan, std::size_t stage, SplitMix64& rng,
                Itinerary& out) {
  const StageLayout& s = plan[stage];
  if (stage == 0) {
    std::uint64_t bits = 0;
    for (std::uint64_t i = 0; i < s.data; ++i) {
      if (i % 64 == 0) bits = rng();
      out.push_back(static_cast<std::uint8_t>((bits >> (i % 64)) & 1u));
    }
  } else {
    for (std::uint64_t r = 0; r < s.repeats; ++r) emit_stage(plan, stage - 1, rng, out);
  }
  for (std::uint64_t i = 0; i < s.pad; ++i) out.push_back(2);
}

}  // namespace

void CounterexampleSpec::validate() const {
  if (!(d > 0.0 && d < 0.5)) throw ParameterError("exponent gap d must lie in (0, 1/2)");
  if (stages < 1) throw ParameterError("counterexample needs at least one stage");
  if (first_block < 2) throw ParameterError("first data block must hold at least 2 symbols");
  if (!(pad_margin > 0.0)) throw ParameterError("pad margin must be positive");
}

std::vector<StageLayout> plan_counterexample(const CounterexampleSpec& spec) {
  spec.validate();
  std::vector<StageLayout> plan;
  StageLayout first;
  first.data = spec.first_block;
  first.length = padded_length(first.data, first.data, spec);
  first.pad = first.length - first.data;
  if (first.length > spec.max_length) throw ParameterError("first stage exceeds maximum length");
  plan.push_back(first);

  for (unsigned i = 2; i <= spec.stages; ++i) {
    const StageLayout& prev = plan.back();
    // Position just after the last data symbol of a copy of the previous stage.
    const std::uint64_t data_end = prev.length - prev.pad;
    std::uint64_t repeats = i < 63 ? (std::uint64_t{1} << i) : spec.max_length;
    for (;; ++repeats) {
      if (repeats * prev.length > spec.max_length) {
        throw ParameterError("stage " + std::to_string(i) +
                             " cannot reach S_n > n^(1/2+d) within the maximum length " +
                             std::to_string(spec.max_length));
      }
      if (exceeds(repeats * prev.data, (repeats - 1) * prev.length + data_end, spec.d)) break;
    }
    StageLayout s;
    s.repeats = repeats;
    s.data = repeats * prev.data;
    s.length = padded_length(s.data, repeats * prev.length, spec);
    s.pad = s.length - repeats * prev.length;
    plan.push_back(s);
  }
  return plan;
}

Counterexample generate_counterexample(const CounterexampleSpec& spec) {
  Counterexample ce;
  ce.stages = plan_counterexample(spec);
  SplitMix64 rng = SplitMix64::for_point(spec.seed, 0);
  ce.sequence.reserve(ce.stages.back().length);
  emit_stage(ce.stages, ce.stages.size() - 1, rng, ce.sequence);

  const Itinerary& seq = ce.sequence;
  for (unsigned i = 0; i < ce.stages.size(); ++i) {
    const StageLayout& s = ce.stages[i];
    std::uint64_t witness_n = s.data;
    if (i > 0) {
      const StageLayout& prev = ce.stages[i - 1];
      witness_n = (s.repeats - 1) * prev.length + (prev.length - prev.pad);
    }
    const std::uint64_t ws = seq.occupation(witness_n);
    if (!exceeds(ws, witness_n, spec.d)) {
      throw ParameterError("stage " + std::to_string(i + 1) + " misses S_n > n^(1/2+d)");
    }
    ce.witnesses.push_back({i + 1, witness_n, ws, log_ratio(ws, witness_n)});

    if (s.pad > 0) {
      const std::uint64_t ps = seq.occupation(s.length);
      if (!(static_cast<double>(ps) < std::sqrt(static_cast<double>(s.length)))) {
        throw ParameterError("stage " + std::to_string(i + 1) + " misses S_n < n^(1/2)");
      }
      ce.pad_checkpoints.push_back({i + 1, s.length, ps, log_ratio(ps, s.length)});
    }
  }
  return ce;
}

}  // namespace recurlab
