#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "topsel/objective.hpp"
#include "topsel/sliding_window.hpp"

namespace topsel {

enum class AscentMode { FixedSteps, ExactPath };

struct AscentConfig {
  int steps = 100;
  /// Either one step size reused for every step or exactly `steps` of them.
  std::vector<double> step_sizes{1.0 / 16.0};
  Functional functional;
  AscentMode mode = AscentMode::FixedSteps;
  /// Fixed-step mode stops once the projected gradient's max-norm falls below
  /// this value. 0 runs the whole budget.
  double grad_tol = 0.0;
  /// Exact mode: only consider entry crossings below the largest active death.
  bool prune = false;

  double step_size(int j) const { return step_sizes.size() == 1 ? step_sizes[0] : step_sizes[static_cast<std::size_t>(j)]; }
  void validate() const;
};

struct StepEvent {
  bool projected = false;
  bool region_crossed = false;
  bool stalled = false;
};

/// v_0 is the barycenter. `events[j]` describes the step from v_j to v_{j+1};
/// a stalled step appends an event but no point.
struct GradientPath {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
  std::vector<StepEvent> events;
  bool stopped_early = false;

  const Eigen::VectorXd& score() const { return points.back(); }
  bool stalled() const { return !events.empty() && events.back().stalled; }
};

/// Euclidean projection onto the probability simplex (sort and threshold).
/// Points already feasible to within 1e-12 are returned unchanged.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& y);

Eigen::VectorXd barycenter(Eigen::Index p);

/// Fixed steps: v_{j+1} = P(v_j + eta_{j+1} grad_proj f(v_j)).
GradientPath ascend_steps(const ComponentDistances& cd, const AscentConfig& cfg);

/// Follows the projected gradient to the boundary of the current linear
/// region each step; stops at the first step with no admissible direction.
GradientPath ascend_exact(const ComponentDistances& cd, const AscentConfig& cfg);

GradientPath ascend(const ComponentDistances& cd, const AscentConfig& cfg);

/// Exact-mode step length from v along d: the first positive t where two
/// matrix entries of the combination tie or a coordinate reaches 0.
/// `crossing` reports whether the limit came from an entry tie.
double boundary_step(const ComponentDistances& cd, const Eigen::VectorXd& v, const Eigen::VectorXd& d,
                     bool* crossing = nullptr, double prune_above = std::numeric_limits<double>::infinity());

}  // namespace topsel
