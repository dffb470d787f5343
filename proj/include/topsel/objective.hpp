#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "topsel/persistence.hpp"
#include "topsel/sliding_window.hpp"

namespace topsel {

enum class FunctionalKind { TotalPersistence, MaxPersistence, TopL };

/// Piecewise-linear functional on graded diagrams.
struct Functional {
  FunctionalKind kind = FunctionalKind::MaxPersistence;
  int ell = 1;                 // TopL only
  std::vector<int> degrees{1};

  /// Accepts `total`, `max`, `top:<l>`, optionally followed by
  /// `;degrees=<k>[,<k>...]`.
  static Functional parse(std::string_view spec);
  std::string to_string() const;
};

/// The pairs a functional reads, in selection order.
std::vector<const DiagramPoint*> select_active(const Functional& f, const GradedDiagram& d);

double evaluate(const Functional& f, const GradedDiagram& d);

struct ActivePair {
  Simplex birth;
  Simplex death;
  Entry birth_entry;
  Entry death_entry;

  friend bool operator==(const ActivePair&, const ActivePair&) = default;
};

struct GradientReport {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::VectorXd projected_grad;
  std::vector<ActivePair> active_pairs;
};

/// Exact gradient of v -> F(PD(w_{vD})) at v, chained through the argmax
/// entries of the selected birth and death simplices.
GradientReport gradient(const Functional& f, const GradedDiagram& d, const ComponentDistances& cd,
                        std::span<const double> v);

/// combo_distance -> rips_diagram -> gradient in one call.
struct Evaluation {
  GradedDiagram diagram;
  GradientReport report;
};
Evaluation evaluate_at(const Functional& f, const ComponentDistances& cd, std::span<const double> v);

/// Functional value at the barycenter for each window length in
/// [min_window, max_window]; `best` is the smallest maximizing length.
struct WindowScan {
  std::vector<int> windows;
  std::vector<double> values;
  int best = 0;
};
WindowScan scan_window(const TimeSeries& x, int min_window, int max_window, const Functional& f);

}  // namespace topsel
