#include <gtest/gtest.h>

#include <sstream>

#include "recurlab/itinerary.hpp"
#include "recurlab/rng.hpp"

using namespace recurlab;

TEST(Itinerary, OccupationOfShortString) {
  const auto it = Itinerary::from_string("0101");
  ASSERT_EQ(it.size(), 4u);
  EXPECT_EQ(it.occupation_prefix(), (std::vector<std::uint64_t>{0, 0, 1, 1, 2}));
}

TEST(Itinerary, ThreeSymbolMask) {
  const auto it = Itinerary::from_string("0122102", 3, symbol_mask({0, 1}));
  EXPECT_EQ(it.occupation(7), 4u);
  EXPECT_EQ(it[2], 2);
}

TEST(ItineraryProperty, PrefixMatchesDirectCount) {
  SplitMix64 rng(21);
  for (unsigned alphabet : {2u, 3u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t len = 1 + rng.below(300);
      Itinerary it(alphabet, alphabet == 3 ? symbol_mask({0, 1}) : symbol_mask({1}));
      std::vector<std::uint8_t> raw;
      for (std::size_t i = 0; i < len; ++i) {
        raw.push_back(static_cast<std::uint8_t>(rng.below(alphabet)));
        it.push_back(raw.back());
      }
      const auto prefix = it.occupation_prefix();
      std::uint64_t count = 0;
      EXPECT_EQ(prefix[0], 0u);
      for (std::size_t n = 0; n < len; ++n) {
        count += alphabet == 3 ? raw[n] <= 1 : raw[n] == 1;
        EXPECT_EQ(prefix[n + 1], count);
        EXPECT_LE(prefix[n + 1] - prefix[n], 1u);
        EXPECT_LE(prefix[n + 1], n + 1);
        EXPECT_EQ(it[n], raw[n]);
      }
    }
  }
}

TEST(Itinerary, CheckpointDumpRoundTrip) {
  SplitMix64 rng(22);
  Itinerary it;
  for (int i = 0; i < 1000; ++i) it.push_back(static_cast<std::uint8_t>(rng.below(2)));
  std::ostringstream out;
  write_occupation_checkpoints(it, 100, out);
  const std::string bytes = out.str();
  std::istringstream in(bytes);
  const auto counts = read_occupation_checkpoints(in);
  ASSERT_EQ(bytes.size(), counts.size() * 8);
  for (std::size_t k = 0; k < counts.size(); ++k) EXPECT_EQ(counts[k], it.occupation(k * 100));
  // Little-endian: first byte of the second counter is its low byte.
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), counts[1] & 0xff);
}
