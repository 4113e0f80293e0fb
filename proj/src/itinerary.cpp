#include "recurlab/itinerary.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace recurlab {

namespace {

constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

}  // namespace

Itinerary::Itinerary(unsigned alphabet_size, SymbolMask occupied)
    : alphabet_(alphabet_size), occupied_(occupied) {
  if (alphabet_size < 2 || alphabet_size > kMaxAlphabet) {
    throw std::invalid_argument("itinerary alphabet must have 2 or 3 symbols");
  }
  if (occupied >= (1u << alphabet_size)) {
    throw std::invalid_argument("occupied set refers to symbols outside the alphabet");
  }
}

Itinerary Itinerary::from_string(std::string_view digits, unsigned alphabet_size,
                                 SymbolMask occupied) {
  Itinerary it(alphabet_size, occupied);
  it.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument(std::string("non-digit symbol '") + ch + "' in itinerary");
    }
    it.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return it;
}

Itinerary Itinerary::from_symbols(std::span<const std::uint8_t> symbols, unsigned alphabet_size,
                                  SymbolMask occupied) {
  Itinerary it(alphabet_size, occupied);
  it.reserve(symbols.size());
  for (auto s : symbols) it.push_back(s);
  return it;
}

void Itinerary::reserve(std::size_t n) {
  words_.reserve((n + 31) / 32);
  rank_.reserve((n + 31) / 32);
}

void Itinerary::push_back(std::uint8_t symbol) {
  if (symbol >= alphabet_) {
    throw std::invalid_argument("symbol " + std::to_string(symbol) + " outside alphabet");
  }
  const std::size_t slot = size_ & 31u;
  if (slot == 0) {
    words_.push_back(0);
    rank_.push_back(total_);
  }
  words_.back() |= static_cast<std::uint64_t>(symbol) << (slot * 2u);
  total_ += (occupied_ >> symbol) & 1u;
  ++size_;
}

std::uint64_t Itinerary::occupied_bits(std::uint64_t word) const noexcept {
  const std::uint64_t lo = word & kEvenBits;
  const std::uint64_t hi = (word >> 1) & kEvenBits;
  std::uint64_t bits = 0;
  if (occupied_ & 1u) bits |= ~lo & ~hi & kEvenBits;
  if (occupied_ & 2u) bits |= lo & ~hi;
  if (occupied_ & 4u) bits |= ~lo & hi & kEvenBits;
  return bits;
}

std::uint64_t Itinerary::occupation(std::size_t n) const {
  if (n > size_) throw std::out_of_range("occupation index beyond itinerary length");
  if (n == size_) return total_;
  const std::size_t w = n >> 5;
  const std::size_t slot = n & 31u;
  const std::uint64_t below = slot == 0 ? 0 : (~std::uint64_t{0} >> (64u - slot * 2u));
  return rank_[w] + static_cast<std::uint64_t>(std::popcount(occupied_bits(words_[w]) & below));
}

std::vector<std::uint64_t> Itinerary::occupation_prefix() const {
  std::vector<std::uint64_t> out(size_ + 1, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    out[i + 1] = out[i] + ((occupied_ >> (*this)[i]) & 1u);
  }
  return out;
}

std::vector<std::uint8_t> Itinerary::symbols() const {
  std::vector<std::uint8_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

bool operator==(const Itinerary& a, const Itinerary& b) noexcept {
  return a.size_ == b.size_ && a.alphabet_ == b.alphabet_ && a.occupied_ == b.occupied_ &&
         a.words_ == b.words_;
}

void write_occupation_checkpoints(const Itinerary& it, std::size_t stride, std::ostream& out) {
  if (stride == 0) throw std::invalid_argument("checkpoint stride must be positive");
  for (std::size_t n = 0; n <= it.size(); n += stride) {
    std::uint64_t v = it.occupation(n);
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(v >> (8 * b));
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
}

std::vector<std::uint64_t> read_occupation_checkpoints(std::istream& in) {
  std::vector<std::uint64_t> values;
  unsigned char bytes[8];
  while (in.read(reinterpret_cast<char*>(bytes), 8)) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[b];
    values.push_back(v);
  }
  return values;
}

}  // namespace recurlab
