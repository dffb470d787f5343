#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "topsel/persistence.hpp"
#include "topsel/simplex.hpp"

namespace topsel {

/// Piecewise-affine curve of weights on a fixed skeleton, or of filtration
/// matrices, given by its values at strictly increasing breakpoints.
class PLCurve {
 public:
  static PLCurve of_weights(Skeleton skeleton, std::vector<double> breakpoints, std::vector<Weight> values);
  static PLCurve of_matrices(std::vector<double> breakpoints, std::vector<Eigen::MatrixXd> values);

  bool is_matrix_curve() const noexcept { return !matrices_.empty(); }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  std::size_t segments() const noexcept { return breakpoints_.size() - 1; }
  /// Vertex count of the underlying simplex.
  int vertices() const noexcept;
  const Skeleton* skeleton() const noexcept { return skeleton_.get(); }

  Weight weight_at(double t) const;           // weight curves only
  Eigen::MatrixXd matrix_at(double t) const;  // matrix curves only

 private:
  std::pair<std::size_t, double> locate(double t) const;

  std::vector<double> breakpoints_;
  std::shared_ptr<const Skeleton> skeleton_;
  std::vector<Weight> weights_;
  std::vector<Eigen::MatrixXd> matrices_;
};

struct VinePoint {
  double t = 0.0;
  double birth = 0.0;
  double death = 0.0;
  int region = 0;  // index of the linear piece the sample belongs to
};

struct Vine {
  std::vector<VinePoint> points;
};

struct Vineyard {
  int degree = 0;
  std::vector<Vine> vines;
  std::vector<double> crossings;          // located matching changes
  std::vector<double> sample_times;       // grid samples (excludes bisection points)
  std::vector<std::size_t> sample_counts; // diagram size at each grid sample
  int regions = 0;
  double stitch_error = 0.0;              // largest endpoint jump across a crossing

  /// Largest distance of an interior point from the chord through the first
  /// and last point of its region, over all vines and regions.
  double max_chord_deviation() const;
};

/// Samples `resolution` points per segment, locates matching changes by
/// bisection and stitches vines across them.
Vineyard trace_vineyard(const PLCurve& curve, int k, int resolution, double bisection_tol = 1e-12);

/// The refined total order induced by (w, base); shift and scale invariant.
struct RegionSignature {
  std::vector<std::size_t> order;
  friend bool operator==(const RegionSignature&, const RegionSignature&) = default;
};
RegionSignature region_signature(const Weight& w, const BaseOrder& base, const Skeleton& skeleton);

void write_vineyard_json(std::ostream& os, const Vineyard& v);
void write_vineyard_csv(std::ostream& os, const Vineyard& v);

}  // namespace topsel
