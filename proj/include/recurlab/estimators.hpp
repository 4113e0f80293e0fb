#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recurlab/itinerary.hpp"
#include "recurlab/orbit.hpp"

namespace recurlab {

struct EntropyEstimate {
  // Nats per visit to A: estimate of h_mu(T) / mu(A).
  double h_induced = 0.0;
  std::uint64_t n_used = 0;
  std::uint64_t visits = 0;
  // Bootstrap standard error over excursion blocks (exact, no resampling).
  double std_error = 0.0;
};


inline constexpr std::uint64_t kMinEntropyVisits = 100;

/// Hopf-ratio (Rokhlin) estimate S_n(log T') / S_n(1_A) from prefix sums over
/// the first n steps. Blocks for the bootstrap start at each visit to A.
EntropyEstimate entropy_rokhlin(std::span<const double> log_derivative_prefix,
                                std::span<const std::uint64_t> occupation_prefix, std::size_t n);

/// Mergeable summary of excursion blocks: count, mean and centred second
/// moment (Chan's update), plus the lead segment before the first visit.
struct BlockSummary {
  double lead = 0.0;
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  static BlockSummary of(double lead, std::span<const double> blocks);
  static BlockSummary of(const LogDerivativeBlocks& blocks);
  void merge(const BlockSummary& other);
};

/// Same estimate from an orbit's (or a pooled ensemble's) excursion blocks.
EntropyEstimate entropy_rokhlin(const LogDerivativeBlocks& blocks, std::uint64_t n_used);
EntropyEstimate entropy_rokhlin(const BlockSummary& blocks, std::uint64_t n_used);

struct AlphaEstimate {
  double alpha_hat = 0.0;
  std::size_t k_used = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  // alpha_hat > 1: the tail is lighter than any return sequence of an infinite
  // measure (geometric returns of a finite-measure system).
  bool light_tail = false;
};

// sqrt(count), the default Hill order.
std::size_t default_hill_k(std::size_t count);

/// Hill estimator on the k largest samples:
///   alpha_hat = [ (1/k) sum_{i<=k} log(X_(i) / X_(k+1)) ]^-1,
/// with the normal-approximation 95% interval alpha_hat (1 +- 1.96/sqrt k).
AlphaEstimate alpha_hill(std::span<const std::uint64_t> samples,
                         std::optional<std::size_t> k = std::nullopt);
AlphaEstimate alpha_hill(std::span<const double> samples,
                         std::optional<std::size_t> k = std::nullopt);

/// The `capacity` largest values seen plus the number of values seen; holds
/// everything Hill needs for any k < capacity.
class TailSample {
 public:
  explicit TailSample(std::size_t capacity);
  void add(double v);
  void merge(const TailSample& other);
  std::uint64_t count() const noexcept { return count_; }
  std::size_t capacity() const noexcept { return capacity_; }
  std::vector<double> descending() const;

 private:
  std::size_t capacity_;
  std::uint64_t count_ = 0;
  // Min-heap of the retained values.
  std::vector<double> heap_;
};

AlphaEstimate alpha_hill(const TailSample& tail, std::optional<std::size_t> k = std::nullopt);

inline constexpr std::size_t kMinSmbOccurrences = 50;

/// -log( #occurrences of the n-prefix of `cylinder` in `orbit` / S_L(1_A) ),
/// the Hopf-ratio estimate of -log( mu(xi_n) / mu(A) ). Nats.
double smb_ratio(std::span<const std::uint8_t> cylinder, const Itinerary& orbit, std::size_t n);

}  // namespace recurlab
