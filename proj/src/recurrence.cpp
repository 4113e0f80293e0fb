#include "recurlab/recurrence.hpp"

#include <stdexcept>

namespace recurlab {

namespace {

// Prefix view used as the pattern for self-matching.
struct PrefixView {
  const Itinerary& it;
  std::size_t len;
  std::size_t size() const noexcept { return len; }
  std::uint8_t operator[](std::size_t i) const noexcept { return it[i]; }
};

}  // namespace

std::size_t ReturnTimeTable::resolved_up_to() const noexcept {
  std::size_t n = 0;
  while (n + 1 < r_.size() && r_[n + 1] != 0) ++n;
  return n;
}

ReturnTimeTable cylinder_return_times(const Itinerary& it, std::size_t n_max) {
  if (n_max > it.size()) throw std::invalid_argument("n_max exceeds itinerary length");
  ReturnTimeTable table(n_max);
  if (n_max == 0) return table;
  // R_n = min{ j >= 1 : z[j] >= n }. R is nondecreasing in n, so one pass
  // over j assigns every n in order.
  std::size_t next = 1;
  for_each_match_length(PrefixView{it, n_max}, it, 1, [&](std::size_t j, std::size_t len) {
    while (next <= len) {
      table.set(next, j, it.occupation(j));
      ++next;
    }
    return next <= n_max;
  });
  return table;
}

ReturnTimeTable naive_cylinder_oracle(const Itinerary& it, std::size_t n_max) {
  if (n_max > it.size()) throw std::invalid_argument("n_max exceeds itinerary length");
  const std::size_t len = it.size();
  ReturnTimeTable table(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t j = 1; j + n <= len; ++j) {
      std::size_t i = 0;
      while (i < n && it[i] == it[j + i]) ++i;
      if (i == n) {
        // \bar R_n by direct count of occupied symbols among the first j.
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < j; ++k) s += (it.occupied() >> it[k]) & 1u;
        table.set(n, j, s);
        break;
      }
    }
  }
  return table;
}

std::optional<std::uint64_t> RecordMinima::tau(double r) const {
  // Records have strictly decreasing d: find the first with d < r.
  auto it = std::partition_point(records_.begin(), records_.end(),
                                 [r](const Record& rec) { return rec.d >= r; });
  if (it == records_.end()) return std::nullopt;
  return it->n;
}

RecordMinima ball_return_records(std::span<const double> distances) {
  RecordMinima rm;
  for (std::size_t i = 0; i < distances.size(); ++i) rm.push(i + 1, distances[i]);
  return rm;
}

std::optional<std::uint64_t> naive_first_passage(std::span<const double> distances, double r) {
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (distances[i] < r) return i + 1;
  }
  return std::nullopt;
}

}  // namespace recurlab
