#include <gtest/gtest.h>

#include "test_util.hpp"
#include "topsel/error.hpp"
#include "topsel/sliding_window.hpp"

using namespace topsel;

TEST(SlidingWindow, ShortColumn) {
  Eigen::MatrixXd x(3, 1);
  x << 0, 1, 3;
  const auto cd = sliding_window_distances(TimeSeries(x), 2);
  Eigen::MatrixXd expect(2, 2);
  expect << 0, 3, 3, 0;
  EXPECT_EQ(cd.mats[0], expect);
  EXPECT_EQ(cd.points(), 2);
}

TEST(SlidingWindow, WindowOneIsComponentDistance) {
  std::mt19937_64 rng(101);
  const TimeSeries x(testutil::random_series(20, 3, rng));
  const auto cd = sliding_window_distances(x, 1);
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_EQ(cd.mats[static_cast<std::size_t>(j)], component_distance(x, j));
}

TEST(SlidingWindow, FullWindowGivesSinglePoint) {
  std::mt19937_64 rng(103);
  const TimeSeries x(testutil::random_series(9, 2, rng));
  const auto cd = sliding_window_distances(x, 9);
  EXPECT_EQ(cd.points(), 1);
  EXPECT_EQ(cd.mats[1](0, 0), 0.0);
}

TEST(SlidingWindow, RejectsBadWindow) {
  const TimeSeries x(Eigen::MatrixXd::Zero(5, 2));
  for (int L : {0, 6, -1}) {
    try {
      sliding_window_distances(x, L);
      FAIL() << L;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidWindow);
    }
  }
}

TEST(SlidingWindow, RejectsNonFiniteSeries) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 2);
  x(2, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(TimeSeries{x}, Error);
}

TEST(SlidingWindow, IncrementalEqualsDirectBitwise) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + trial % 40, p = 1 + trial % 6;
    const Eigen::MatrixXd data = testutil::random_series(n, p, rng);
    const TimeSeries x(data);
    for (int L : {1, 2, n / 2 + 1, n}) {
      const auto cd = sliding_window_distances(x, L);
      for (int j = 0; j < p; ++j) EXPECT_EQ(cd.mats[static_cast<std::size_t>(j)], oracle::window_distance(data, j, L));
    }
  }
}

TEST(SlidingWindow, ScanVisitsEveryLength) {
  std::mt19937_64 rng(109);
  const Eigen::MatrixXd data = testutil::random_series(30, 3, rng);
  const TimeSeries x(data);
  std::vector<int> seen;
  scan_windows(x, 4, 12, [&](int L, const ComponentDistances& cd) {
    seen.push_back(L);
    EXPECT_EQ(cd.window, L);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(cd.mats[static_cast<std::size_t>(j)], oracle::window_distance(data, j, L));
  });
  EXPECT_EQ(seen.size(), 9u);
  EXPECT_EQ(seen.front(), 4);
  EXPECT_EQ(seen.back(), 12);
}

TEST(SlidingWindow, ConvolutionIdentity) {
  // sum_j |v_j| D_j of window vectors equals the window distance of the
  // rescaled series with columns multiplied by |v_j|, for dyadic weights
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<int> pick(0, 16);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 10 + trial, p = 1 + trial % 5, L = 1 + trial % 7;
    const Eigen::MatrixXd data = testutil::random_series(n, p, rng).array().round();
    std::vector<double> v(static_cast<std::size_t>(p));
    for (auto& x : v) x = (pick(rng) - 8) / 16.0;
    const auto M = combo_distance(sliding_window_distances(TimeSeries(data), L), v);
    Eigen::MatrixXd scaled = data;
    for (int j = 0; j < p; ++j) scaled.col(j) *= std::abs(v[static_cast<std::size_t>(j)]);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(n - L + 1, n - L + 1);
    for (int j = 0; j < p; ++j) expect += oracle::window_distance(scaled, j, L);
    EXPECT_EQ(M, expect);
  }
}

TEST(SlidingWindow, ComboIsFiltrationMatrix) {
  std::mt19937_64 rng(127);
  const auto cd = sliding_window_distances(TimeSeries(testutil::random_series(25, 4, rng)), 5);
  const std::vector<double> v = {0.3, -0.2, 0.0, 0.5};
  const auto M = combo_distance(cd, v);
  EXPECT_NO_THROW(validate_filtration_matrix(M));
  EXPECT_EQ(M.diagonal().squaredNorm(), 0.0);
  EXPECT_THROW(combo_distance(cd, std::vector<double>{1.0, 0.0}), Error);
}

TEST(SlidingWindow, FullDistance) {
  Eigen::MatrixXd x(2, 2);
  x << 0, 0, 1, -2;
  const auto d = full_distance(TimeSeries(x));
  EXPECT_EQ(d(0, 1), 3.0);
  EXPECT_EQ(d(1, 0), 3.0);
}
