#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace recurlab {

// Set of symbols counted by the occupation time S_n(A, .). Bit s set <=> symbol s in A.
using SymbolMask = std::uint8_t;

constexpr SymbolMask symbol_mask(std::initializer_list<unsigned> symbols) {
  SymbolMask m = 0;
  for (unsigned s : symbols) m = static_cast<SymbolMask>(m | (1u << s));
  return m;
}

/// Symbolic itinerary over an alphabet of at most three symbols, packed two
/// bits per symbol, with an occupation-count index: occupation(n) returns
/// S_n(A, x), the number of the first n symbols that belong to A, in O(1).
class Itinerary {
 public:
  static constexpr unsigned kMaxAlphabet = 3;

  explicit Itinerary(unsigned alphabet_size = 2, SymbolMask occupied = symbol_mask({1}));

  // Digits '0'..'2'; throws std::invalid_argument on anything else.
  static Itinerary from_string(std::string_view digits, unsigned alphabet_size = 2,
                               SymbolMask occupied = symbol_mask({1}));
  static Itinerary from_symbols(std::span<const std::uint8_t> symbols, unsigned alphabet_size = 2,
                                SymbolMask occupied = symbol_mask({1}));

  void reserve(std::size_t n);
  void push_back(std::uint8_t symbol);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  unsigned alphabet_size() const noexcept { return alphabet_; }
  SymbolMask occupied() const noexcept { return occupied_; }

  std::uint8_t operator[](std::size_t i) const noexcept {
    return static_cast<std::uint8_t>((words_[i >> 5] >> ((i & 31u) * 2u)) & 3u);
  }

  // S_n for 0 <= n <= size().
  std::uint64_t occupation(std::size_t n) const;

  // occupation(0..size()), materialised.
  std::vector<std::uint64_t> occupation_prefix() const;
  std::vector<std::uint8_t> symbols() const;

  std::span<const std::uint64_t> packed_words() const noexcept { return words_; }

  friend bool operator==(const Itinerary& a, const Itinerary& b) noexcept;

 private:
  std::uint64_t occupied_bits(std::uint64_t word) const noexcept;

  std::vector<std::uint64_t> words_;
  // rank_[w] = S at the start of word w.
  std::vector<std::uint64_t> rank_;
  std::size_t size_ = 0;
  std::uint64_t total_ = 0;
  unsigned alphabet_;
  SymbolMask occupied_;
};

// Raw dump: headerless little-endian uint64 values occupation(k * stride) for
// k = 0 .. floor(size/stride).
void write_occupation_checkpoints(const Itinerary& it, std::size_t stride, std::ostream& out);
std::vector<std::uint64_t> read_occupation_checkpoints(std::istream& in);

}  // namespace recurlab
