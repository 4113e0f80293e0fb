#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "recurlab/errors.hpp"
#include "recurlab/experiments.hpp"

using namespace recurlab;

namespace {

std::string csv(const ExperimentReport& r) {
  std::ostringstream out;
  write_report_csv(r, out);
  return out.str();
}

EnsembleSettings ensemble(MapSpec map, std::size_t points, std::uint64_t iters, std::uint64_t seed) {
  EnsembleSettings s;
  s.map = map;
  s.points = points;
  s.iters = iters;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(Fit, LeastSquaresExactLine) {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const auto f = least_squares(x, y);
  EXPECT_DOUBLE_EQ(f.slope, 2.0);
  EXPECT_DOUBLE_EQ(f.intercept, 1.0);
  EXPECT_THROW(least_squares(std::vector<double>{1, 1}, std::vector<double>{0, 1}), InsufficientData);
}

TEST(Fit, SummaryAndPlateau) {
  const auto s = summarize({5, 1, 3, 2, 4});
  EXPECT_EQ(s.median, 3.0);
  EXPECT_EQ(s.q1, 2.0);
  EXPECT_EQ(s.q3, 4.0);
  const std::vector<std::size_t> n{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<double> v{9, 9, 9, 9, 9, 9, 1, 3};
  EXPECT_EQ(top_quartile_median(n, v), 2.0);
  EXPECT_THROW(summarize({}), InsufficientData);
}

TEST(Grid, GeometricAndRatioBound) {
  const auto g = geometric_grid(1e-2, 1e-4, 9);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), 1e-2);
  EXPECT_EQ(g.back(), 1e-4);
  for (std::size_t k = 1; k < g.size(); ++k) {
    EXPECT_LT(g[k], g[k - 1]);
    EXPECT_GE(g[k], kMinGridRatio * g[k - 1]);
    EXPECT_NEAR(g[k] / g[k - 1], std::pow(1e-2, 0.125), 1e-12);
  }
}

TEST(Ball, GridValidation) {
  const auto s = ensemble(MapSpec::doubling(), 10, 1000, 1);
  EXPECT_THROW(run_ball_exponent(s, std::vector<double>{0.01}), ParameterError);
  EXPECT_THROW(run_ball_exponent(s, std::vector<double>{0.3, 0.1, 0.05}), ParameterError);
  EXPECT_THROW(run_ball_exponent(s, std::vector<double>{0.1, 0.001, 0.0005}), ParameterError);
  EXPECT_THROW(run_ball_exponent(ensemble(MapSpec::doubling(), 5, 1000, 1), geometric_grid(0.1, 0.01, 3)),
               ParameterError);
}

TEST(Ball, DoublingDimensionOne) {
  std::vector<double> grid;
  for (int k = 6; k <= 14; ++k) grid.push_back(std::ldexp(1.0, -k));
  const auto r = run_ball_exponent(ensemble(MapSpec::doubling(), 100, 10'000'000, 3), grid);
  EXPECT_EQ(r.rows.size(), 100u);
  EXPECT_NEAR(r.per_point.median, 1.0, 0.1);
  ASSERT_TRUE(r.median_curve);
  EXPECT_NEAR(r.median_curve->slope, 1.0, 0.1);
  EXPECT_EQ(r.report.prediction, 1.0);
  for (const auto& row : r.rows) EXPECT_TRUE(std::isfinite(row.slope));
}

TEST(Ball, StagnatedPointsAreDroppedAndCounted) {
  auto s = ensemble(MapSpec::classic_mp(3.0), 10, 1000, 1);
  s.ladder.retry = false;
  // Every point resolves on a coarse grid; none stagnates from a uniform start.
  const auto r = run_ball_exponent(s, geometric_grid(0.2, 0.05, 3));
  EXPECT_EQ(r.dropped_stagnation, 0u);
  EXPECT_EQ(r.rows.size() + r.dropped_unresolved, 10u);
}

TEST(Cylinder, DoublingAnchor) {
  const auto r = run_cylinder_limit(ensemble(MapSpec::doubling(), 30, 10'000'000, 2), 16, 24);
  EXPECT_EQ(r.alpha_used, 1.0);
  EXPECT_NEAR(r.entropy.h_induced, 2 * std::log(2.0), 0.01);
  EXPECT_NEAR(r.report.measured / (2 * std::log(2.0)), 1.0, 0.1);
  EXPECT_GE(r.n_cap, 16u);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.n, 16u);
    EXPECT_LE(row.n, 24u);
    EXPECT_NEAR(row.ratio, std::log(static_cast<double>(row.r_n)) / row.s_n, 1e-12);
  }
}

TEST(Cylinder, ShortOrbitGivesFewerRows) {
  const auto s = ensemble(MapSpec::doubling(), 4, 2000, 5);
  const auto r = run_cylinder_limit(s, 1, 64);
  for (const auto& row : r.rows) EXPECT_LT(row.n, 40u);
  EXPECT_LT(r.rows.size(), 4u * 64u);
}

TEST(Cylinder, InvalidGrid) {
  EXPECT_THROW(run_cylinder_limit(ensemble(MapSpec::doubling(), 2, 100, 1), 5, 4), ParameterError);
}

TEST(Experiments, AlphaAndEntropyReports) {
  const auto s = ensemble(MapSpec::classic_mp(3.0), 4, 2'000'000, 6);
  const auto a = run_alpha(s, 50);
  EXPECT_EQ(a.report.prediction, 0.5);
  EXPECT_EQ(a.report.rows.size(), 4u);
  EXPECT_GT(a.alpha.alpha_hat, 0.0);
  const auto e = run_entropy(s);
  EXPECT_GT(e.pooled.h_induced, 0.0);
  EXPECT_TRUE(std::isnan(e.report.prediction));
  const auto o = run_orbit_summary(s);
  EXPECT_EQ(o.rows.size(), 4u);
}

// Same seed and settings give byte-identical reports for any thread count.
TEST(Determinism, ThreadCountIndependent) {
  auto s = ensemble(MapSpec::classic_mp(3.0), 12, 200'000, 99);
  const auto grid = geometric_grid(1e-2, 1e-3, 5);
  s.threads = 1;
  const std::string ball1 = csv(run_ball_exponent(s, grid).report);
  const std::string cyl1 = csv(run_cylinder_limit(s, 1, 32).report);
  const std::string ent1 = csv(run_entropy(s).report);
  for (unsigned t : {2u, 5u}) {
    s.threads = t;
    EXPECT_EQ(csv(run_ball_exponent(s, grid).report), ball1);
    EXPECT_EQ(csv(run_cylinder_limit(s, 1, 32).report), cyl1);
    EXPECT_EQ(csv(run_entropy(s).report), ent1);
  }
  s.seed = 100;
  EXPECT_NE(csv(run_ball_exponent(s, grid).report), ball1);
}

TEST(ParallelFor, RethrowsLowestIndex) {
  std::vector<int> hit(20, 0);
  EXPECT_THROW(parallel_for(20, 4,
                            [&](std::size_t i) {
                              hit[i] = 1;
                              if (i == 7) throw std::runtime_error("seven");
                            }),
               std::runtime_error);
  for (int h : hit) EXPECT_EQ(h, 1);
}
