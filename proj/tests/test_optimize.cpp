#include <gtest/gtest.h>

#include "test_util.hpp"
#include "topsel/error.hpp"
#include "topsel/optimize.hpp"

using namespace topsel;

namespace {

ComponentDistances toy_pair(double second_scale = 0.0) {
  ComponentDistances cd;
  cd.window = 1;
  Eigen::MatrixXd D1(3, 3), D2(3, 3);
  D1 << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  D2 << 0, 3, 1, 3, 0, 1.5, 1, 1.5, 0;
  cd.mats = {D1, second_scale > 0 ? Eigen::MatrixXd(second_scale * D1) : D2};
  return cd;
}

// One strong periodic column followed by pure noise columns.
ComponentDistances signal_and_noise(std::mt19937_64& rng, int p, int n = 60, int L = 6) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd x(n, p);
  for (int r = 0; r < n; ++r) x(r, 0) = 3.0 * std::sin(2 * 3.141592653589793 * r / 15.0);
  for (int c = 1; c < p; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = 0.5 * g(rng);
  return sliding_window_distances(TimeSeries(x), L);
}

bool on_simplex(const Eigen::VectorXd& v) {
  return v.minCoeff() >= 0.0 && std::abs(v.sum() - 1.0) <= 1e-12;
}

}  // namespace

TEST(Projection, Examples) {
  const Eigen::Vector2d a = project_simplex(Eigen::Vector2d(0.6, 0.6));
  EXPECT_DOUBLE_EQ(a(0), 0.5);
  EXPECT_DOUBLE_EQ(a(1), 0.5);
  const Eigen::Vector2d b = project_simplex(Eigen::Vector2d(2.0, -1.0));
  EXPECT_EQ(b, Eigen::Vector2d(1.0, 0.0));
  const Eigen::Vector3d c(0.2, 0.3, 0.5);
  EXPECT_EQ(project_simplex(c), c);
}

TEST(Projection, Errors) {
  try {
    project_simplex(Eigen::VectorXd(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidVector);
  }
  EXPECT_THROW(project_simplex(Eigen::Vector2d(std::nan(""), 0.0)), Error);
}

TEST(Projection, IdempotentFeasibleAndMatchesOracle) {
  std::mt19937_64 rng(211);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 1 + trial % 12;
    Eigen::VectorXd y(p);
    for (int i = 0; i < p; ++i) y(i) = g(rng);
    const Eigen::VectorXd x = project_simplex(y);
    ASSERT_TRUE(on_simplex(x));
    EXPECT_EQ(project_simplex(x), x);
    EXPECT_LE((x - oracle::project_simplex(y)).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(BoundaryStep, FirstEntryTie) {
  const auto cd = toy_pair();
  const Eigen::Vector2d v(0.5, 0.5);
  bool crossing = false;
  EXPECT_NEAR(boundary_step(cd, v, Eigen::Vector2d(1, -1), &crossing), 1.0 / 6.0, 1e-15);
  EXPECT_TRUE(crossing);
  EXPECT_NEAR(boundary_step(cd, v, Eigen::Vector2d(-1, 1), &crossing), 1.0 / 14.0, 1e-15);
  EXPECT_TRUE(crossing);
}

TEST(BoundaryStep, SimplexExitWithoutTies) {
  const auto cd = toy_pair(2.0);
  bool crossing = true;
  EXPECT_DOUBLE_EQ(boundary_step(cd, Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(1, -1), &crossing), 0.5);
  EXPECT_FALSE(crossing);
}

TEST(FixedSteps, IdenticalColumnsStayAtBarycenter) {
  std::mt19937_64 rng(223);
  Eigen::MatrixXd col = testutil::noisy_sines(30, 1, 0.1, rng);
  Eigen::MatrixXd x(30, 3);
  x << col, col, col;
  const auto cd = sliding_window_distances(TimeSeries(x), 4);
  AscentConfig cfg;
  cfg.steps = 5;
  const auto path = ascend(cd, cfg);
  ASSERT_EQ(path.points.size(), 6u);
  for (const auto& v : path.points) EXPECT_LE((v - barycenter(3)).norm(), 1e-15);
  cfg.grad_tol = 1e-9;
  const auto early = ascend(cd, cfg);
  EXPECT_TRUE(early.stopped_early);
  EXPECT_EQ(early.points.size(), 1u);
}

TEST(FixedSteps, FeasibleAndConditionallyMonotone) {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 6; ++trial) {
    const auto cd = sliding_window_distances(TimeSeries(testutil::noisy_sines(40, 4, 0.4, rng)), 4);
    AscentConfig cfg;
    cfg.steps = 40;
    cfg.step_sizes = {1.0 / 256};
    cfg.functional = Functional::parse(trial % 2 ? "max" : "top:2");
    const auto path = ascend(cd, cfg);
    ASSERT_EQ(path.points.size(), 41u);
    ASSERT_EQ(path.events.size(), 40u);
    for (std::size_t j = 0; j < path.events.size(); ++j) {
      EXPECT_TRUE(on_simplex(path.points[j + 1]));
      if (!path.events[j].projected && !path.events[j].region_crossed)
        EXPECT_GE(path.values[j + 1], path.values[j] - 1e-9) << j;
    }
  }
}

TEST(FixedSteps, FindsSignalColumn) {
  std::mt19937_64 rng(229);
  const auto cd = signal_and_noise(rng, 3);
  AscentConfig cfg;
  cfg.steps = 150;
  cfg.step_sizes = {1.0 / 48};
  const auto path = ascend(cd, cfg);
  EXPECT_GE(path.score()(0), 0.99);
  EXPECT_GT(path.values.back(), path.values.front());
}

TEST(FixedSteps, StepScheduleAndValidation) {
  std::mt19937_64 rng(233);
  const auto cd = signal_and_noise(rng, 2, 30, 4);
  AscentConfig cfg;
  cfg.steps = 3;
  cfg.step_sizes = {0.01, 0.02, 0.03};
  EXPECT_EQ(ascend(cd, cfg).points.size(), 4u);
  cfg.step_sizes = {0.01, 0.02};
  EXPECT_THROW(ascend(cd, cfg), Error);
  cfg.step_sizes = {-1.0};
  EXPECT_THROW(ascend(cd, cfg), Error);
  cfg.step_sizes = {0.1};
  cfg.steps = 0;
  EXPECT_THROW(ascend(cd, cfg), Error);
}

TEST(ExactPath, MonotoneAndFeasible) {
  std::mt19937_64 rng(239);
  for (int trial = 0; trial < 6; ++trial) {
    const auto cd = sliding_window_distances(TimeSeries(testutil::noisy_sines(30, 3 + trial % 3, 0.4, rng)), 3);
    AscentConfig cfg;
    cfg.mode = AscentMode::ExactPath;
    cfg.steps = 30;
    cfg.functional = Functional::parse(trial % 2 ? "max" : "total");
    const auto path = ascend(cd, cfg);
    for (std::size_t j = 0; j + 1 < path.points.size(); ++j) {
      EXPECT_TRUE(on_simplex(path.points[j + 1]));
      EXPECT_GE(path.values[j + 1], path.values[j] - 1e-9) << trial << ' ' << j;
    }
    EXPECT_EQ(path.events.size(), path.points.size() - 1 + (path.stalled() ? 1 : 0));
  }
}

TEST(ExactPath, ZeroGradientStallsImmediately) {
  std::mt19937_64 rng(241);
  Eigen::MatrixXd col = testutil::noisy_sines(30, 1, 0.1, rng);
  Eigen::MatrixXd x(30, 2);
  x << col, col;
  AscentConfig cfg;
  cfg.mode = AscentMode::ExactPath;
  cfg.steps = 10;
  const auto path = ascend(sliding_window_distances(TimeSeries(x), 4), cfg);
  EXPECT_EQ(path.points.size(), 1u);
  ASSERT_EQ(path.events.size(), 1u);
  EXPECT_TRUE(path.stalled());
  EXPECT_TRUE(path.stopped_early);
}

TEST(ExactPath, ProgressesUntilVertexBudgetOrStall) {
  // Ridges between two maximal pairs leave no admissible direction, so the
  // walk may end early; it must then carry a stall flag.
  std::mt19937_64 rng(251);
  const auto cd = signal_and_noise(rng, 3, 16, 3);
  AscentConfig cfg;
  cfg.mode = AscentMode::ExactPath;
  cfg.steps = 3000;
  for (bool prune : {false, true}) {
    cfg.prune = prune;
    const auto path = ascend(cd, cfg);
    EXPECT_GT(path.values.back(), path.values.front()) << prune;
    for (std::size_t j = 1; j < path.values.size(); ++j) EXPECT_GE(path.values[j], path.values[j - 1] - 1e-9);
    const bool at_vertex = path.score().maxCoeff() >= 1.0 - 1e-12;
    const bool stalled = !path.events.empty() && path.events.back().stalled;
    EXPECT_TRUE(at_vertex || stalled || path.points.size() == 3001u) << prune;
    EXPECT_EQ(path.stopped_early, stalled && path.events.size() < 3000u);
  }
}
