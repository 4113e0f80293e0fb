#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recurlab/itinerary.hpp"

namespace recurlab {

/// Z-function: z[j] = length of the longest common prefix of s and s[j..].
/// z[0] is set to |s| by convention. O(|s|).
template <class Seq>
std::vector<std::size_t> z_function(const Seq& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  std::size_t l = 0, r = 0;
  for (std::size_t j = 1; j < n; ++j) {
    std::size_t k = j < r ? std::min(z[j - l], r - j) : 0;
    while (j + k < n && s[k] == s[j + k]) ++k;
    z[j] = k;
    if (j + k > r) {
      l = j;
      r = j + k;
    }
  }
  return z;
}

/// Streams, for each text position j >= start, the match length
/// min(LCP(text[j..], pattern), |pattern|) to sink(j, len). The sink returns
/// false to stop early. Linear time, O(|pattern|) extra memory: the Z-box is
/// kept over the text and only the pattern's own Z-array is stored.
template <class Pattern, class Text, class Sink>
void for_each_match_length(const Pattern& pattern, const Text& text, std::size_t start,
                           Sink&& sink) {
  const std::size_t m = pattern.size();
  const std::size_t n = text.size();
  if (m == 0) return;
  const auto zp = z_function(pattern);
  // Invariant: text[l, r) == pattern[0, r - l), r - l <= m.
  std::size_t l = 0, r = 0;
  for (std::size_t j = start; j < n; ++j) {
    std::size_t k = 0;
    if (j < r) {
      k = std::min(zp[j - l], r - j);
      if (k < r - j) {
        if (!sink(j, k)) return;
        continue;
      }
    }
    while (k < m && j + k < n && text[j + k] == pattern[k]) ++k;
    l = j;
    r = j + k;
    if (!sink(j, k)) return;
  }
}

/// R_n and the occupation-clocked \bar R_n = S_{R_n} for n = 1..n_max.
/// An entry is unresolved when the n-prefix does not recur at a shift j with
/// j + n <= L.
class ReturnTimeTable {
 public:
  ReturnTimeTable() = default;
  explicit ReturnTimeTable(std::size_t n_max) : r_(n_max + 1, 0), rbar_(n_max + 1, 0) {}

  std::size_t n_max() const noexcept { return r_.empty() ? 0 : r_.size() - 1; }
  std::optional<std::uint64_t> r(std::size_t n) const {
    return r_.at(n) ? std::optional<std::uint64_t>(r_[n]) : std::nullopt;
  }
  std::optional<std::uint64_t> rbar(std::size_t n) const {
    return r_.at(n) ? std::optional<std::uint64_t>(rbar_[n]) : std::nullopt;
  }
  // Largest n whose R_n is resolved (0 if none).
  std::size_t resolved_up_to() const noexcept;

  void set(std::size_t n, std::uint64_t r, std::uint64_t rbar) {
    r_.at(n) = r;
    rbar_.at(n) = rbar;
  }

  bool operator==(const ReturnTimeTable&) const = default;

 private:
  // 0 marks unresolved; index 0 unused.
  std::vector<std::uint64_t> r_;
  std::vector<std::uint64_t> rbar_;
};

// Linear time via capped match lengths of the itinerary against its own prefix.
ReturnTimeTable cylinder_return_times(const Itinerary& it, std::size_t n_max);

// Literal definition: for each n, scan shifts j = 1, 2, ... comparing n symbols.
ReturnTimeTable naive_cylinder_oracle(const Itinerary& it, std::size_t n_max);

struct Record {
  std::uint64_t n;
  double d;
  bool operator==(const Record&) const = default;
};

/// Strict running minima of d(T^n x, x), n >= 1. tau(r) = n_k of the first
/// record with d_k < r, which is the first n with d_n < r.
class RecordMinima {
 public:
  void push(std::uint64_t n, double d) {
    if (records_.empty() || d < records_.back().d) records_.push_back({n, d});
  }
  std::optional<std::uint64_t> tau(double r) const;
  std::span<const Record> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::vector<Record> records_;
};

// distances[i] is the distance at n = i + 1.
RecordMinima ball_return_records(std::span<const double> distances);

// Oracle: linear scan for the first n with distances[n-1] < r.
std::optional<std::uint64_t> naive_first_passage(std::span<const double> distances, double r);

}  // namespace recurlab
