#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "recurlab/orbit.hpp"
#include "recurlab/recurrence.hpp"
#include "recurlab/rng.hpp"

using namespace recurlab;

namespace {

std::vector<std::size_t> naive_z(const std::string& s) {
  std::vector<std::size_t> z(s.size(), 0);
  for (std::size_t j = 1; j < s.size(); ++j) {
    while (j + z[j] < s.size() && s[z[j]] == s[j + z[j]]) ++z[j];
  }
  return z;
}

Itinerary random_itinerary(SplitMix64& rng, std::size_t len, unsigned alphabet) {
  Itinerary it(alphabet, alphabet == 3 ? symbol_mask({0, 1}) : symbol_mask({1}));
  // Low-entropy sources as well, so long prefixes recur.
  const unsigned used = rng.below(2) ? alphabet : 1 + static_cast<unsigned>(rng.below(alphabet));
  const std::uint64_t period = rng.below(4) == 0 ? 1 + rng.below(8) : 0;
  std::vector<std::uint8_t> raw;
  for (std::size_t i = 0; i < len; ++i) {
    if (period && i >= period && rng.below(50) != 0) {
      raw.push_back(raw[i - period]);
    } else {
      raw.push_back(static_cast<std::uint8_t>(rng.below(used)));
    }
    it.push_back(raw.back());
  }
  return it;
}

}  // namespace

TEST(ZFunction, Examples) {
  auto z = z_function(std::string("aaaaa"));
  EXPECT_EQ(std::vector<std::size_t>(z.begin() + 1, z.end()), (std::vector<std::size_t>{4, 3, 2, 1}));
  z = z_function(std::string("abab"));
  EXPECT_EQ(std::vector<std::size_t>(z.begin() + 1, z.end()), (std::vector<std::size_t>{0, 2, 0}));
}

TEST(ZFunction, MatchesNaiveOnRandomBinary) {
  SplitMix64 rng(31);
  std::string s;
  for (int i = 0; i < 4096; ++i) s.push_back(rng.below(2) ? 'b' : 'a');
  const auto z = z_function(s);
  const auto n = naive_z(s);
  for (std::size_t j = 1; j < s.size(); ++j) ASSERT_EQ(z[j], n[j]) << j;
}

TEST(ZFunction, StreamingMatchesFullZ) {
  SplitMix64 rng(32);
  std::string text;
  for (int i = 0; i < 3000; ++i) text.push_back(static_cast<char>('a' + rng.below(2)));
  const std::string pattern = text.substr(0, 12);
  const auto z = z_function(text);
  for_each_match_length(pattern, text, 1, [&](std::size_t j, std::size_t len) {
    EXPECT_EQ(len, std::min<std::size_t>(z[j], 12)) << j;
    return true;
  });
}

TEST(CylinderReturns, PeriodTwo) {
  const auto it = Itinerary::from_string("0101010101");
  const auto t = cylinder_return_times(it, 4);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(t.r(n), 2u);
  EXPECT_EQ(naive_cylinder_oracle(it, 4).r(3), 2u);
}

TEST(CylinderReturns, PeriodThree) {
  const auto t = cylinder_return_times(Itinerary::from_string("100100100"), 1);
  EXPECT_EQ(t.r(1), 3u);
  EXPECT_EQ(t.rbar(1), 1u);
}

TEST(CylinderReturns, FullLengthUnresolved) {
  const auto it = Itinerary::from_string("0110100110");
  const auto t = naive_cylinder_oracle(it, it.size());
  EXPECT_FALSE(t.r(it.size()));
  EXPECT_EQ(cylinder_return_times(it, it.size()), t);
}

TEST(CylinderReturnsProperty, OracleEquivalence) {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const unsigned alphabet = trial % 2 ? 3 : 2;
    const std::size_t len = 1 + rng.below(4096);
    const auto it = random_itinerary(rng, len, alphabet);
    const std::size_t n_max = 1 + rng.below(std::min<std::size_t>(64, len));
    const auto fast = cylinder_return_times(it, n_max);
    ASSERT_EQ(fast, naive_cylinder_oracle(it, n_max)) << "trial " << trial;

    std::optional<std::uint64_t> prev;
    bool unresolved = false;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const auto r = fast.r(n);
      if (!r) {
        unresolved = true;
        continue;
      }
      ASSERT_FALSE(unresolved) << "resolved after unresolved at n=" << n;
      ASSERT_GE(*r, 1u);
      if (prev) ASSERT_GE(*r, *prev);
      prev = r;
      const auto rbar = *fast.rbar(n);
      ASSERT_LE(rbar, *r);
      std::uint64_t direct = 0;
      for (std::size_t i = 0; i < *r; ++i) direct += (it.occupied() >> it[i]) & 1u;
      ASSERT_EQ(rbar, direct);
    }
  }
}

TEST(CylinderReturns, DoublingEntropyRate) {
  OrbitConfig cfg;
  cfg.map = MapSpec::doubling();
  cfg.n_iters = 4'000'000;
  cfg.seed = 4;
  const auto r = run_orbit(cfg);
  const auto t = cylinder_return_times(r.itinerary, 20);
  ASSERT_TRUE(t.r(20));
  EXPECT_NEAR(std::log2(static_cast<double>(*t.r(20))) / 20.0, 1.0, 0.25);
}

TEST(BallReturns, PeriodicOrbit) {
  const std::vector<double> d{1.0 / 3, 0.0, 1.0 / 3, 0.0, 1.0 / 3};
  const auto rec = ball_return_records(d);
  ASSERT_EQ(rec.size(), 2u);
  EXPECT_EQ(rec.records()[0], (Record{1, 1.0 / 3}));
  EXPECT_EQ(rec.records()[1], (Record{2, 0.0}));
  EXPECT_EQ(rec.tau(0.5), 1u);
  EXPECT_EQ(rec.tau(0.2), 2u);
}

TEST(BallReturns, ConstantStream) {
  const std::vector<double> d(10, 0.25);
  const auto rec = ball_return_records(d);
  EXPECT_EQ(rec.size(), 1u);
  EXPECT_FALSE(rec.tau(0.25));
  EXPECT_FALSE(rec.tau(0.1));
  EXPECT_EQ(rec.tau(0.3), 1u);
}

TEST(BallReturnsProperty, OracleEquivalenceOnOrbits) {
  SplitMix64 rng(34);
  for (std::uint64_t point = 0; point < 10; ++point) {
    OrbitConfig cfg;
    cfg.map = point % 2 ? MapSpec::classic_mp(3.0) : MapSpec::doubling();
    cfg.n_iters = 100'001;
    cfg.seed = 35;
    cfg.point_index = point;
    OrbitOutputs want;
    want.distances = true;
    const auto orbit = run_orbit(cfg, want);
    const auto rec = ball_return_records(orbit.distances);
    for (std::size_t k = 1; k < rec.size(); ++k) {
      ASSERT_LT(rec.records()[k - 1].n, rec.records()[k].n);
      ASSERT_GT(rec.records()[k - 1].d, rec.records()[k].d);
    }
    std::optional<std::uint64_t> prev_tau;
    std::vector<double> radii;
    for (int i = 0; i < 50; ++i) radii.push_back(std::pow(10.0, -6.0 * rng.uniform()));
    std::sort(radii.begin(), radii.end());
    for (double r : radii) {
      const auto tau = rec.tau(r);
      ASSERT_EQ(tau, naive_first_passage(orbit.distances, r)) << "r=" << r;
      // tau is nonincreasing in r.
      if (prev_tau && tau) ASSERT_LE(*tau, *prev_tau);
      if (tau) prev_tau = tau;
    }
  }
}
