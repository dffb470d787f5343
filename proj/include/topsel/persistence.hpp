#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "topsel/simplex.hpp"

namespace topsel {

/// Z/2 boundary matrix over a skeleton, with rows and columns indexed by rank
/// in `order`. Column r lists the ranks of the codimension-one faces of the
/// simplex at rank r, ascending.
struct BoundaryMatrix {
  std::vector<std::vector<std::uint32_t>> columns;
  std::vector<int> dims;  // dimension of the simplex at each rank
  BaseOrder order;
};

BoundaryMatrix build_boundary(const Skeleton& skeleton, const BaseOrder& order);

/// Birth-death pair in skeleton positions.
struct BirthDeathPair {
  std::size_t birth = 0;
  std::size_t death = 0;

  friend bool operator==(const BirthDeathPair&, const BirthDeathPair&) = default;
  friend auto operator<=>(const BirthDeathPair&, const BirthDeathPair&) = default;
};

struct BirthDeathMatching {
  std::vector<BirthDeathPair> pairs;     // sorted by (birth, death)
  std::vector<std::size_t> essential;    // unpaired positive simplices

  std::size_t count_in_degree(const Skeleton& skeleton, int k) const;
};

struct ReduceOptions {
  /// Zero out columns of simplices already known to be births of a higher
  /// dimensional pair. Columns are then processed by decreasing dimension.
  bool clearing = false;
};

struct Reduction {
  std::vector<std::vector<std::uint32_t>> reduced;  // by rank
  BirthDeathMatching matching;
};

/// Standard left-to-right column reduction with a lowest-row lookup table.
Reduction reduce(const BoundaryMatrix& boundary, ReduceOptions options = {});

struct Provenance {
  Simplex birth;
  Simplex death;
  Entry birth_entry;
  Entry death_entry;
  std::size_t birth_rank = 0;  // base-order rank
  std::size_t death_rank = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct DiagramPoint {
  int degree = 0;
  double birth = 0.0;
  double death = 0.0;
  std::optional<Provenance> provenance;

  double lifetime() const noexcept { return death - birth; }
};

/// Multiset of (degree, birth, death) triples.
struct GradedDiagram {
  std::vector<DiagramPoint> points;
  std::size_t ignored_degrees = 0;  // requested degrees outside [-1, m-1]

  std::vector<DiagramPoint> in_degree(int k) const;
  std::vector<int> degrees() const;
  GradedDiagram scaled(double lambda) const;
};

/// One point per pair whose birth has a requested degree. Provenance is
/// attached when the weight carries argmax entries.
GradedDiagram diagram(const BirthDeathMatching& matching, const Weight& w, const Skeleton& skeleton,
                      const BaseOrder& base, std::span<const int> degrees);

/// Convenience: refine the canonical order by w, reduce, and read off the
/// requested degrees.
GradedDiagram compute_diagram(const Skeleton& skeleton, const Weight& w, std::span<const int> degrees,
                              ReduceOptions options = {});

/// Number of degree-k pairs on the full augmented (m-1)-simplex.
std::int64_t f_plus(int m, int k);

/// Rank of the map on reduced Z/2 homology H_k(K_a) -> H_k(K_b), computed by
/// Gaussian elimination on cycle and boundary spaces. Shares no code with the
/// reduction above.
int persistent_betti(const Skeleton& skeleton, const Weight& w, int k, double a, double b);

/// Counts diagram points with birth <= a and death > b.
int quadrant_count(const GradedDiagram& d, int k, double a, double b);

/// A weighted complex extended to the full augmented simplex.
struct AugmentedExtension {
  Skeleton skeleton;            // full power set on [m]
  Weight weight;
  std::vector<bool> original;   // by skeleton position: simplex belongs to the input
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Extends a monotone weight on a simplicial complex (no empty simplex) to the
/// full augmented simplex: the empty simplex sits one range below the minimum
/// and every missing simplex one range above the maximum.
AugmentedExtension extend_to_augmented(const Skeleton& complex, const Weight& w);

/// Inverse conversion: deaths at added simplices become +inf, pairs born at
/// added simplices are dropped, and the degree -1 point (a, b) is replaced by
/// the degree 0 point (b, +inf).
GradedDiagram ordinary_diagram(const GradedDiagram& augmented, const AugmentedExtension& ext);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Per-degree Wasserstein distance with q-norm ground metric, diagonal
/// matching allowed; degrees combined by q-norm (max for q = inf).
/// Zero-persistence points are ignored. Both diagrams must be finite.
double wasserstein(const GradedDiagram& d1, const GradedDiagram& d2, double q);

/// Single-degree variant on raw (birth, death) lists.
double wasserstein_points(std::span<const std::pair<double, double>> a,
                          std::span<const std::pair<double, double>> b, double q);

}  // namespace topsel
