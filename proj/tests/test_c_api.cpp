// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "topsel/topsel.h"

namespace {

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "topsel_c_api_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

tsel_series* make_sines(int signals, const std::vector<int>& permuted = {}) {
  const double noise[] = {0.2};
  tsel_sines_params params{signals, 120, 25.0, noise, 1, permuted.data(), permuted.size(), 42};
  tsel_series* s = nullptr;
  EXPECT_EQ(tsel_generate_sines(&params, nullptr, &s), TSEL_OK) << tsel_last_error();
  return s;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(tsel_version(), "");
  EXPECT_STREQ(tsel_status_name(TSEL_ERR_INVALID_WINDOW), "invalid-window");
  EXPECT_STREQ(tsel_status_name(TSEL_OK), "ok");
}

TEST(CApi, SeriesRoundTrip) {
  const double data[] = {1, 2, 3, 4, 5, 6};  // row-major 3 x 2
  tsel_series* s = nullptr;
  ASSERT_EQ(tsel_series_from_data(data, 3, 2, &s), TSEL_OK);
  size_t n = 0, p = 0;
  tsel_series_shape(s, &n, &p);
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(p, 2u);
  const auto path = scratch("series.csv");
  ASSERT_EQ(tsel_series_write_csv(s, path.c_str()), TSEL_OK);
  tsel_series* back = nullptr;
  ASSERT_EQ(tsel_series_read_csv(path.c_str(), &back), TSEL_OK);
  std::vector<double> out(6);
  tsel_series_data(back, out.data());
  EXPECT_EQ(out, std::vector<double>(data, data + 6));
  tsel_series_free(s);
  tsel_series_free(back);
}

TEST(CApi, ErrorsAreReported) {
  tsel_series* s = nullptr;
  EXPECT_EQ(tsel_series_read_csv("/nonexistent/file.csv", &s), TSEL_ERR_IO);
  EXPECT_NE(std::string(tsel_last_error()).find("nonexistent"), std::string::npos);
  EXPECT_EQ(s, nullptr);
  EXPECT_EQ(tsel_series_from_data(nullptr, 3, 2, &s), TSEL_ERR_INVALID_ARGUMENT);

  s = make_sines(2);
  tsel_distances* d = nullptr;
  EXPECT_EQ(tsel_distances_new(s, 0, &d), TSEL_ERR_INVALID_WINDOW);
  EXPECT_EQ(tsel_distances_new(s, 500, &d), TSEL_ERR_INVALID_WINDOW);
  tsel_series_free(s);

  const double bad[] = {0, 1, 2, 0};
  const int deg[] = {0};
  tsel_diagram* dg = nullptr;
  EXPECT_EQ(tsel_diagram_from_matrix(bad, 2, deg, 1, &dg), TSEL_ERR_INVALID_MATRIX);
}

TEST(CApi, DiagramOfUnitSquare) {
  const double r = std::sqrt(2.0);
  const double M[] = {0, 1, r, 1, 1, 0, 1, r, r, 1, 0, 1, 1, r, 1, 0};
  const int deg[] = {1};
  tsel_diagram* d = nullptr;
  ASSERT_EQ(tsel_diagram_from_matrix(M, 4, deg, 1, &d), TSEL_OK);
  double value = 0;
  ASSERT_EQ(tsel_functional_value("max", d, &value), TSEL_OK);
  EXPECT_DOUBLE_EQ(value, r - 1.0);
  EXPECT_EQ(tsel_functional_value("median", d, &value), TSEL_ERR_PARSE);
  double w = -1;
  ASSERT_EQ(tsel_wasserstein(d, d, 2.0, &w), TSEL_OK);
  EXPECT_EQ(w, 0.0);
  EXPECT_EQ(tsel_wasserstein(d, d, 0.5, &w), TSEL_ERR_INVALID_ORDER);
  size_t count = 0;
  tsel_diagram_size(d, &count);
  int k = 0;
  double b = 0, e = 0;
  EXPECT_EQ(tsel_diagram_point(d, count, &k, &b, &e), TSEL_ERR_INVALID_ARGUMENT);
  tsel_diagram_free(d);
}

TEST(CApi, AscentAndTrials) {
  tsel_series* s = make_sines(3);
  tsel_distances* d = nullptr;
  ASSERT_EQ(tsel_distances_new(s, 10, &d), TSEL_OK);
  size_t points = 0, comps = 0;
  tsel_distances_shape(d, &points, &comps);
  EXPECT_EQ(points, 111u);
  EXPECT_EQ(comps, 3u);

  const double eta[] = {1.0 / 48};
  tsel_ascent_params ap{20, eta, 1, "max", TSEL_MODE_FIXED, 0.0, 0};
  tsel_path* path = nullptr;
  ASSERT_EQ(tsel_ascend(d, &ap, &path), TSEL_OK) << tsel_last_error();
  size_t np = 0, p = 0;
  tsel_path_shape(path, &np, &p);
  EXPECT_EQ(np, 21u);
  std::vector<double> v(p);
  double f = 0;
  tsel_path_point(path, np - 1, v.data(), &f);
  EXPECT_NEAR(v[0] + v[1] + v[2], 1.0, 1e-12);
  size_t ev = 0;
  tsel_path_event_count(path, &ev);
  EXPECT_EQ(ev, 20u);
  tsel_path_free(path);

  tsel_trial_params tp{4, 0.1, 7, 10, 2, ap};
  tsel_summary* sum = nullptr;
  ASSERT_EQ(tsel_run_trials(s, &tp, &sum), TSEL_OK) << tsel_last_error();
  std::vector<double> mean(3), cov(9);
  int defined = 0;
  tsel_summary_mean_score(sum, mean.data());
  tsel_summary_covariance(sum, cov.data(), &defined);
  EXPECT_EQ(defined, 1);
  EXPECT_NEAR(mean[0] + mean[1] + mean[2], 1.0, 1e-12);
  int idx[3];
  size_t n_support = 0;
  ASSERT_EQ(tsel_summary_support(sum, 1e-3, idx, 3, &n_support), TSEL_OK);
  EXPECT_GE(n_support, 1u);
  const auto dir = scratch("summary");
  ASSERT_EQ(tsel_summary_write(sum, dir.c_str()), TSEL_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "scores.csv"));
  tsel_summary_free(sum);

  tp.window = 1000;
  EXPECT_EQ(tsel_run_trials(s, &tp, &sum), TSEL_ERR_INVALID_WINDOW);
  tsel_distances_free(d);
  tsel_series_free(s);
}

TEST(CApi, ScanAndVineyard) {
  tsel_series* s = make_sines(2);
  std::vector<double> values(5);
  int best = 0;
  ASSERT_EQ(tsel_scan_window(s, 3, 7, "max", values.data(), &best), TSEL_OK);
  EXPECT_GE(best, 3);
  EXPECT_LE(best, 7);

  tsel_distances* d = nullptr;
  ASSERT_EQ(tsel_distances_new(s, 100, &d), TSEL_OK);
  const double v0[] = {1, 0}, v1[] = {0, 1};
  tsel_vineyard* vy = nullptr;
  ASSERT_EQ(tsel_vineyard_combo_segment(d, v0, v1, 2, 1, 6, &vy), TSEL_OK) << tsel_last_error();
  size_t vines = 0, crossings = 0;
  double chord = 0, stitch = 0;
  tsel_vineyard_info(vy, &vines, &crossings, &chord, &stitch);
  EXPECT_LE(chord, 1e-6);
  EXPECT_EQ(tsel_vineyard_combo_segment(d, v0, v1, 2, 1, 1, &vy), TSEL_ERR_INVALID_RESOLUTION);
  tsel_vineyard_free(vy);
  tsel_distances_free(d);
  tsel_series_free(s);

  const int a[] = {1, 2}, b[] = {2, 3};
  double j = 0;
  tsel_jaccard(a, 2, b, 2, &j);
  EXPECT_DOUBLE_EQ(j, 1.0 / 3.0);
}

TEST(CApi, NullFreeIsSafe) {
  tsel_series_free(nullptr);
  tsel_distances_free(nullptr);
  tsel_diagram_free(nullptr);
  tsel_path_free(nullptr);
  tsel_summary_free(nullptr);
  tsel_vineyard_free(nullptr);
}
