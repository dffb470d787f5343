#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace topsel {

/// n x p observations: rows are time points, columns are variables.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(Eigen::MatrixXd data);

  Eigen::Index length() const noexcept { return data_.rows(); }
  Eigen::Index variables() const noexcept { return data_.cols(); }
  const Eigen::MatrixXd& data() const noexcept { return data_; }

 private:
  Eigen::MatrixXd data_;
};

/// Per-variable sliding-window distance matrices for one window length.
struct ComponentDistances {
  std::vector<Eigen::MatrixXd> mats;  // p matrices, each m x m with m = n - L + 1
  int window = 1;

  Eigen::Index points() const { return mats.empty() ? 0 : mats.front().rows(); }
  Eigen::Index components() const { return static_cast<Eigen::Index>(mats.size()); }
};

/// |x_kj - x_lj| for one column (0-based j).
Eigen::MatrixXd component_distance(const TimeSeries& x, Eigen::Index j);

/// Window-length-L 1-norm distances per variable, built as a sum of shifted
/// diagonal blocks of the length-one distance matrix.
ComponentDistances sliding_window_distances(const TimeSeries& x, int window);

/// Calls `visit(L, distances)` for every L in [min_window, max_window], each
/// obtained from the previous one by adding one shifted block.
template <class Visitor>
void scan_windows(const TimeSeries& x, int min_window, int max_window, Visitor&& visit);

/// sum_j |v_j| D_j; the result is a valid filtration matrix.
Eigen::MatrixXd combo_distance(const ComponentDistances& cd, std::span<const double> v);

/// Pairwise 1-norm distance between the rows of X.
Eigen::MatrixXd full_distance(const TimeSeries& x);

namespace detail {
ComponentDistances unit_window(const TimeSeries& x);
void extend_window(const ComponentDistances& base, ComponentDistances& current);
void check_window(const TimeSeries& x, int window);
}  // namespace detail

template <class Visitor>
void scan_windows(const TimeSeries& x, int min_window, int max_window, Visitor&& visit) {
  detail::check_window(x, min_window);
  detail::check_window(x, max_window);
  const ComponentDistances base = detail::unit_window(x);
  ComponentDistances cur = base;
  for (int L = 1; L <= max_window; ++L) {
    if (L > 1) detail::extend_window(base, cur);
    if (L >= min_window) visit(L, static_cast<const ComponentDistances&>(cur));
  }
}

}  // namespace topsel
