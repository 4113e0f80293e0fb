#pragma once

#include <cstdint>
#include <vector>

#include "recurlab/itinerary.hpp"

namespace recurlab {

/// Symbolic tower over a Bernoulli base: symbols 0/1 are the base X_0 = P_0 u P_1,
/// symbol 2 is the tower P_2. Stage 1 is N_1 data symbols followed by a pad of
/// 2s up to length L_1; stage i repeats stage i-1 ell_i times, each copy with
/// fresh data, then pads to L_i. Pads make S_{L_i} < L_i^(1/2); the repeat
/// counts make S_n > n^(1/2+d) somewhere inside every stage's data.
struct CounterexampleSpec {
  double d = 0.25;
  unsigned stages = 3;
  std::uint64_t seed = 0;
  std::uint64_t first_block = 2;
  double pad_margin = 0.1;
  bool terminal_pads = true;
  std::uint64_t max_length = 10'000'000;

  void validate() const;
};

struct StageLayout {
  std::uint64_t data = 0;     // N_i, symbols in X_0 per copy of the stage
  std::uint64_t length = 0;   // L_i, total length of the stage
  std::uint64_t repeats = 1;  // ell_i (1 for the first stage)
  std::uint64_t pad = 0;      // terminal 2-pad of the stage
};

struct Checkpoint {
  unsigned stage = 0;
  std::uint64_t n = 0;
  std::uint64_t occupation = 0;
  // log S_n / log n
  double log_ratio = 0.0;
};

struct Counterexample {
  Itinerary sequence{3, symbol_mask({0, 1})};
  std::vector<StageLayout> stages;
  // n = L_i for every padded stage.
  std::vector<Checkpoint> pad_checkpoints;
  // One per stage: end of the last data block of the stage.
  std::vector<Checkpoint> witnesses;
};

// Derived block parameters; throws ParameterError when the sequence would
// exceed max_length.
std::vector<StageLayout> plan_counterexample(const CounterexampleSpec& spec);

// Builds the sequence and verifies both checkpoint inequalities by direct
// count; a violated inequality throws ParameterError.
Counterexample generate_counterexample(const CounterexampleSpec& spec);

}  // namespace recurlab
