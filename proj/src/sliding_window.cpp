#include "topsel/sliding_window.hpp"

#include <cmath>
#include <string>

#include "topsel/error.hpp"

namespace topsel {

TimeSeries::TimeSeries(Eigen::MatrixXd data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) fail(ErrorCode::InvalidArgument, "time series needs at least one row and one column");
  if (!data_.allFinite()) fail(ErrorCode::InvalidArgument, "time series contains missing or non-finite values");
}

Eigen::MatrixXd component_distance(const TimeSeries& x, Eigen::Index j) {
  if (j < 0 || j >= x.variables())
    fail(ErrorCode::InvalidArgument, "component index " + std::to_string(j) + " out of range");
  const Eigen::Index n = x.length();
  const auto col = x.data().col(j);
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index k = 0; k < n; ++k) d(k, l) = std::abs(col(k) - col(l));
  return d;
}

namespace detail {

void check_window(const TimeSeries& x, int window) {
  if (window < 1 || window > x.length())
    fail(ErrorCode::InvalidWindow, "window length " + std::to_string(window) + " outside [1, " +
                                       std::to_string(x.length()) + "]");
}

ComponentDistances unit_window(const TimeSeries& x) {
  ComponentDistances cd;
  cd.window = 1;
  cd.mats.reserve(static_cast<std::size_t>(x.variables()));
  for (Eigen::Index j = 0; j < x.variables(); ++j) cd.mats.push_back(component_distance(x, j));
  return cd;
}

void extend_window(const ComponentDistances& base, ComponentDistances& current) {
  const int L = current.window + 1;
  const Eigen::Index n = base.points();
  const Eigen::Index m = n - L + 1;
  for (std::size_t j = 0; j < current.mats.size(); ++j) {
    Eigen::MatrixXd next = current.mats[j].topLeftCorner(m, m) + base.mats[j].block(L - 1, L - 1, m, m);
    current.mats[j].swap(next);
  }
  current.window = L;
}

}  // namespace detail

ComponentDistances sliding_window_distances(const TimeSeries& x, int window) {
  detail::check_window(x, window);
  const ComponentDistances base = detail::unit_window(x);
  ComponentDistances cur = base;
  while (cur.window < window) detail::extend_window(base, cur);
  return cur;
}

Eigen::MatrixXd combo_distance(const ComponentDistances& cd, std::span<const double> v) {
  if (static_cast<Eigen::Index>(v.size()) != cd.components())
    fail(ErrorCode::InvalidVector, "combination vector has length " + std::to_string(v.size()) + ", expected " +
                                       std::to_string(cd.components()));
  for (double x : v)
    if (!std::isfinite(x)) fail(ErrorCode::InvalidVector, "combination vector has non-finite entries");
  const Eigen::Index m = cd.points();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0.0) out.noalias() += std::abs(v[j]) * cd.mats[j];
  }
  return out;
}

Eigen::MatrixXd full_distance(const TimeSeries& x) {
  const Eigen::Index n = x.length();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < x.variables(); ++j) d += component_distance(x, j);
  return d;
}

}  // namespace topsel
