#include "recurlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recurlab/recurrence.hpp"
#include "recurlab/rng.hpp"

namespace recurlab {

namespace {

EntropyEstimate from_summary(const BlockSummary& summary, std::uint64_t n_used) {
  if (summary.count < kMinEntropyVisits) {
    throw InsufficientReturns("entropy estimate needs at least " +
                              std::to_string(kMinEntropyVisits) + " visits to A, got " +
                              std::to_string(summary.count));
  }
  const double count = static_cast<double>(summary.count);
  EntropyEstimate est;
  est.n_used = n_used;
  est.visits = summary.count;
  est.h_induced = summary.mean + summary.lead / count;
  // Exact (ideal) bootstrap over excursion blocks: resampling K blocks with
  // replacement gives a mean whose variance is the population variance / K.
  est.std_error = std::sqrt(summary.m2 / count) / std::sqrt(count);
  return est;
}

// Hill on the k+1 largest values, given in descending order.
AlphaEstimate hill_sorted(std::span<const double> top, std::size_t count,
                          std::optional<std::size_t> k_opt) {
  const std::size_t k = k_opt.value_or(default_hill_k(count));
  if (k < 10 || count < 10 * k) {
    throw InsufficientSamples("Hill estimator needs k >= 10 and at least 10k samples (k=" +
                              std::to_string(k) + ", count=" + std::to_string(count) + ")");
  }
  if (top.size() < k + 1) throw std::logic_error("Hill estimator: tail sample too short");
  const double threshold = top[k];
  if (!(threshold > 0.0)) throw InsufficientSamples("Hill estimator needs positive samples");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(top[i] / threshold);
  if (acc <= 0.0) {
    throw DegenerateTail("top " + std::to_string(k) + " samples are all equal to " +
                         std::to_string(threshold));
  }
  AlphaEstimate est;
  est.k_used = k;
  est.alpha_hat = static_cast<double>(k) / acc;
  const double half = 1.96 / std::sqrt(static_cast<double>(k));
  est.ci_low = est.alpha_hat * (1.0 - half);
  est.ci_high = est.alpha_hat * (1.0 + half);
  est.light_tail = est.alpha_hat > 1.0;
  return est;
}

template <class T>
AlphaEstimate hill(std::span<const T> samples, std::optional<std::size_t> k_opt) {
  const std::size_t count = samples.size();
  const std::size_t k = k_opt.value_or(default_hill_k(count));
  if (k < 10 || count < 10 * k) return hill_sorted({}, count, k);
  std::vector<double> top(samples.begin(), samples.end());
  for (double v : top) {
    if (!(v > 0.0)) throw InsufficientSamples("Hill estimator needs positive samples");
  }
  std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k + 1), top.end(),
                    std::greater<>());
  top.resize(k + 1);
  return hill_sorted(top, count, k);
}

struct SpanSeq {
  std::span<const std::uint8_t> s;
  std::size_t size() const noexcept { return s.size(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return s[i]; }
};

}  // namespace

EntropyEstimate entropy_rokhlin(std::span<const double> log_derivative_prefix,
                                std::span<const std::uint64_t> occupation_prefix, std::size_t n) {
  if (n >= log_derivative_prefix.size() || n >= occupation_prefix.size()) {
    throw std::out_of_range("entropy_rokhlin: n beyond prefix-sum length");
  }
  if (occupation_prefix[n] < kMinEntropyVisits) {
    throw InsufficientReturns("entropy estimate needs at least " +
                              std::to_string(kMinEntropyVisits) + " visits to A in " +
                              std::to_string(n) + " steps, got " +
                              std::to_string(occupation_prefix[n]));
  }
  double lead = 0.0;
  std::vector<double> blocks;
  blocks.reserve(occupation_prefix[n]);
  std::size_t block_start = 0;
  bool in_block = false;
  for (std::size_t t = 0; t < n; ++t) {
    if (occupation_prefix[t + 1] != occupation_prefix[t]) {
      const double sum = log_derivative_prefix[t] - log_derivative_prefix[block_start];
      if (in_block) {
        blocks.push_back(sum);
      } else {
        lead = sum;
        in_block = true;
      }
      block_start = t;
    }
  }
  blocks.push_back(log_derivative_prefix[n] - log_derivative_prefix[block_start]);
  return from_summary(BlockSummary::of(lead, blocks), n);
}

BlockSummary BlockSummary::of(double lead, std::span<const double> blocks) {
  BlockSummary s;
  s.lead = lead;
  s.count = blocks.size();
  if (blocks.empty()) return s;
  CompensatedSum sum;
  for (double b : blocks) sum.add(b);
  s.mean = sum.value() / static_cast<double>(s.count);
  CompensatedSum m2;
  for (double b : blocks) m2.add((b - s.mean) * (b - s.mean));
  s.m2 = m2.value();
  return s;
}

BlockSummary BlockSummary::of(const LogDerivativeBlocks& blocks) {
  return of(blocks.lead, blocks.blocks);
}

void BlockSummary::merge(const BlockSummary& other) {
  lead += other.lead;
  if (other.count == 0) return;
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / n;
  m2 += other.m2 + delta * delta * na * nb / n;
  count += other.count;
}

EntropyEstimate entropy_rokhlin(const LogDerivativeBlocks& blocks, std::uint64_t n_used) {
  return from_summary(BlockSummary::of(blocks), n_used);
}

EntropyEstimate entropy_rokhlin(const BlockSummary& blocks, std::uint64_t n_used) {
  return from_summary(blocks, n_used);
}

TailSample::TailSample(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("tail sample capacity must be positive");
}

void TailSample::add(double v) {
  ++count_;
  if (heap_.size() < capacity_) {
    heap_.push_back(v);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
  } else if (v > heap_.front()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    heap_.back() = v;
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
  }
}

void TailSample::merge(const TailSample& other) {
  const std::uint64_t total = count_ + other.count_;
  for (double v : other.heap_) add(v);
  count_ = total;
}

std::vector<double> TailSample::descending() const {
  std::vector<double> out = heap_;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

AlphaEstimate alpha_hill(const TailSample& tail, std::optional<std::size_t> k) {
  const std::size_t kk = k.value_or(default_hill_k(tail.count()));
  if (kk + 1 > tail.capacity() && kk >= 10 && tail.count() >= 10 * kk) {
    throw std::invalid_argument("Hill order " + std::to_string(kk) +
                                " needs a tail sample of capacity >= k+1");
  }
  return hill_sorted(tail.descending(), tail.count(), kk);
}

std::size_t default_hill_k(std::size_t count) {
  return static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
}

AlphaEstimate alpha_hill(std::span<const std::uint64_t> samples, std::optional<std::size_t> k) {
  return hill(samples, k);
}

AlphaEstimate alpha_hill(std::span<const double> samples, std::optional<std::size_t> k) {
  return hill(samples, k);
}

double smb_ratio(std::span<const std::uint8_t> cylinder, const Itinerary& orbit, std::size_t n) {
  if (n == 0) throw ParameterError("smb_ratio needs a cylinder length n >= 1");
  if (n > cylinder.size()) throw ParameterError("cylinder prefix shorter than n");
  std::uint64_t occurrences = 0;
  for_each_match_length(SpanSeq{cylinder.first(n)}, orbit, 0, [&](std::size_t, std::size_t len) {
    occurrences += len == n;
    return true;
  });
  if (occurrences < kMinSmbOccurrences) {
    throw InsufficientOccurrences("cylinder of length " + std::to_string(n) + " occurs " +
                                  std::to_string(occurrences) + " times, need " +
                                  std::to_string(kMinSmbOccurrences));
  }
  const double visits = static_cast<double>(orbit.occupation(orbit.size()));
  return -std::log(static_cast<double>(occurrences) / visits);
}

}  // namespace recurlab
