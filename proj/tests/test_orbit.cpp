#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "recurlab/errors.hpp"
#include "recurlab/orbit.hpp"

using namespace recurlab;

namespace {

OrbitConfig doubling_third(std::uint64_t steps) {
  OrbitConfig cfg;
  cfg.map = MapSpec::doubling();
  cfg.n_iters = steps;
  cfg.forced_x0 = 1.0 / 3.0;
  return cfg;
}

}  // namespace

TEST(Orbit, DoublingOneThird) {
  OrbitOutputs want;
  want.distances = true;
  const auto r = run_orbit(doubling_third(4), want);
  EXPECT_EQ(r.itinerary.symbols(), (std::vector<std::uint8_t>{0, 1, 0, 1}));
  EXPECT_EQ(r.itinerary.occupation_prefix(), (std::vector<std::uint64_t>{0, 0, 1, 1, 2}));
  ASSERT_EQ(r.distances.size(), 3u);
  EXPECT_NEAR(r.distances[0], 1.0 / 3.0, 1e-15);
  // The double nearest 1/3 is periodic only through its 53 stored digits.
  EXPECT_LT(r.distances[1], 1e-15);
  EXPECT_EQ(r.returns.samples, (std::vector<std::uint64_t>{2}));
}

TEST(Orbit, StagnationInBinary64) {
  OrbitConfig cfg;
  cfg.map = MapSpec::classic_mp(3.0);
  cfg.n_iters = 10;
  cfg.forced_x0 = 1e-120;
  try {
    run_orbit(cfg);
    FAIL() << "expected StagnationError";
  } catch (const StagnationError& e) {
    EXPECT_EQ(e.x(), 1e-120);
    EXPECT_EQ(e.step(), 0u);
    EXPECT_EQ(e.precision_bits(), 53u);
  }
}

TEST(Orbit, StagnationSurvives128Bits) {
  // The relative increment 4e-240 needs about 800 mantissa bits.
  OrbitConfig cfg;
  cfg.map = MapSpec::classic_mp(3.0);
  cfg.n_iters = 10;
  cfg.forced_x0 = 1e-120;
  EXPECT_THROW(run_orbit_laddered(cfg, PrecisionLadder{true, 128}), StagnationError);
  const auto r = run_orbit_laddered(cfg, PrecisionLadder{true, 1024});
  EXPECT_EQ(r.precision_bits, 1024u);
  EXPECT_EQ(r.itinerary.occupation(10), 0u);
}

TEST(Orbit, LadderRetriesOnce) {
  OrbitConfig cfg;
  cfg.map = MapSpec::classic_mp(3.0);
  cfg.n_iters = 10;
  cfg.forced_x0 = 1e-120;
  int calls = 0;
  EXPECT_THROW(with_precision_ladder(cfg, PrecisionLadder{false, 1024},
                                     [&](const OrbitConfig& c) { ++calls; return run_orbit(c); }),
               StagnationError);
  EXPECT_EQ(calls, 1);
}

TEST(Orbit, SingleStep) {
  OrbitConfig cfg;
  cfg.map = MapSpec::classic_mp(3.0);
  cfg.forced_x0 = 0.25;
  const auto r = run_orbit(cfg);
  EXPECT_EQ(r.itinerary.size(), 1u);
  EXPECT_EQ(r.itinerary[0], 0);
  EXPECT_EQ(r.returns.count(), 0u);
}

TEST(Orbit, InvalidConfig) {
  OrbitConfig cfg;
  cfg.n_iters = 0;
  EXPECT_THROW(run_orbit(cfg), ParameterError);
  cfg.n_iters = 1;
  cfg.precision_bits = 60;
  EXPECT_THROW(run_orbit(cfg), ParameterError);
}

TEST(Orbit, HopfRatio) {
  const std::vector<double> f{0, 1, 3, 6}, g{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(hopf_ratio(f, f, 3), 1.0);
  EXPECT_DOUBLE_EQ(hopf_ratio(f, g, 3), 6.0);
  EXPECT_THROW(hopf_ratio(f, g, 1), UndefinedRatio);
}

TEST(Orbit, DoublingLogDerivativeIsExact) {
  OrbitConfig cfg;
  cfg.map = MapSpec::doubling();
  cfg.n_iters = 1000;
  cfg.seed = 3;
  OrbitOutputs want;
  want.log_derivative_prefix = true;
  const auto r = run_orbit(cfg, want);
  std::vector<double> ones(cfg.n_iters + 1);
  std::iota(ones.begin(), ones.end(), 0.0);
  for (std::size_t n : {1u, 10u, 1000u}) {
    EXPECT_NEAR(hopf_ratio(r.log_derivative_prefix, ones, n), std::log(2.0), 1e-14);
  }
  EXPECT_NEAR(r.log_derivative.total(), 1000 * std::log(2.0), 1e-10);
}

TEST(Orbit, DoublingOccupationFrequency) {
  OrbitConfig cfg;
  cfg.map = MapSpec::doubling();
  cfg.n_iters = 10'000'000;
  cfg.seed = 5;
  OrbitOutputs want;
  want.log_derivative = false;
  const auto r = run_orbit(cfg, want);
  EXPECT_NEAR(static_cast<double>(r.itinerary.occupation(cfg.n_iters)) / 1e7, 0.5, 0.001);
}

TEST(Orbit, ExtendedMatchesBinary64OnShortRun) {
  OrbitConfig cfg;
  cfg.map = MapSpec::classic_mp(3.0);
  cfg.n_iters = 30;
  cfg.seed = 9;
  const auto a = run_orbit(cfg);
  cfg.precision_bits = 128;
  const auto b = run_orbit(cfg);
  EXPECT_EQ(a.x0, b.x0);
  EXPECT_EQ(a.itinerary, b.itinerary);
}

class OrbitInvariants : public ::testing::TestWithParam<MapSpec> {};

TEST_P(OrbitInvariants, ReturnsAndBlocksAgreeWithItinerary) {
  for (std::uint64_t point = 0; point < 5; ++point) {
    OrbitConfig cfg;
    cfg.map = GetParam();
    cfg.n_iters = 20000;
    cfg.seed = 17;
    cfg.point_index = point;
    OrbitOutputs want;
    want.distances = true;
    want.log_derivative_prefix = true;
    const auto r = run_orbit(cfg, want);
    const auto& it = r.itinerary;
    ASSERT_EQ(it.size(), cfg.n_iters);

    std::vector<std::uint64_t> visits;
    for (std::size_t i = 0; i < it.size(); ++i) {
      if (it[i] == 1) visits.push_back(i);
    }
    if (visits.empty()) {
      EXPECT_FALSE(r.returns.first_visit);
      continue;
    }
    EXPECT_EQ(*r.returns.first_visit, visits.front());
    EXPECT_EQ(*r.returns.last_visit, visits.back());
    const std::uint64_t sum = std::accumulate(r.returns.samples.begin(), r.returns.samples.end(),
                                              std::uint64_t{0});
    EXPECT_EQ(sum, visits.back() - visits.front());
    for (auto s : r.returns.samples) EXPECT_GE(s, 1u);
    // Between consecutive visits to A every symbol is 0.
    for (std::size_t k = 0; k + 1 < visits.size(); ++k) {
      EXPECT_EQ(r.returns.samples[k], visits[k + 1] - visits[k]);
    }
    EXPECT_EQ(r.log_derivative.blocks.size(), visits.size());
    const double total = r.log_derivative_prefix.back();
    EXPECT_NEAR(r.log_derivative.total(), total, 1e-9 * total);
    for (double d : r.distances) {
      EXPECT_GE(d, 0.0);
      EXPECT_LT(d, 1.0);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Maps, OrbitInvariants,
                         ::testing::Values(MapSpec::doubling(), MapSpec::classic_mp(2.0),
                                           MapSpec::classic_mp(3.0), MapSpec::param_mp(2.5, 0.3)),
                         [](const ::testing::TestParamInfo<MapSpec>& info) {
                           std::string name(to_string(info.param.kind()));
                           for (char& ch : name) if (ch == '-') ch = '_';
                           return name + "_" + std::to_string(info.index);
                         });

TEST(Orbit, DeterministicAcrossRuns) {
  OrbitConfig cfg;
  cfg.map = MapSpec::param_mp(3.0, 0.4);
  cfg.n_iters = 100000;
  cfg.seed = 42;
  cfg.point_index = 7;
  const auto a = run_orbit(cfg);
  const auto b = run_orbit(cfg);
  EXPECT_EQ(a.itinerary, b.itinerary);
  EXPECT_EQ(a.returns.samples, b.returns.samples);
  EXPECT_EQ(a.log_derivative.blocks, b.log_derivative.blocks);
  cfg.point_index = 8;
  EXPECT_NE(run_orbit(cfg).x0, a.x0);
}

TEST(Orbit, BurnInShiftsOrbit) {
  OrbitConfig cfg;
  cfg.map = MapSpec::classic_mp(3.0);
  cfg.n_iters = 50;
  cfg.seed = 2;
  const auto full = run_orbit(cfg);
  cfg.burn_in = 10;
  cfg.n_iters = 40;
  const auto tail = run_orbit(cfg);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(tail.itinerary[i], full.itinerary[i + 10]);
}
