#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace topsel {

/// A simplex of the augmented (m-1)-simplex: a strictly increasing list of
/// 0-based vertex ids. The empty list is the empty simplex (dimension -1).
struct Simplex {
  std::vector<int> vertices;

  int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }
  bool empty() const noexcept { return vertices.empty(); }
  std::uint64_t mask() const noexcept;
  bool is_face_of(const Simplex& other) const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct SkeletonSpec {
  int m = 0;
  int max_dim = -1;
  bool include_empty = true;
};

/// Upper-triangular matrix position (row <= col), used to record which entry
/// realizes the weight of a simplex.
struct Entry {
  int row = 0;
  int col = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
  friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// Largest vertex count for which the whole power set may be materialized.
inline constexpr int kMaxFullPowerSet = 20;

/// Simplices of a complex on m vertices listed in the canonical base order
/// (dimension, then lexicographic on vertices).
class Skeleton {
 public:
  Skeleton() = default;

  /// Builds from an arbitrary simplex list; the list is sorted into canonical
  /// order and duplicates are rejected. Face-closure is not required here.
  Skeleton(int m, std::vector<Simplex> simplices);

  int vertex_count() const noexcept { return m_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  std::span<const Simplex> simplices() const noexcept { return simplices_; }
  int max_dim() const noexcept { return max_dim_; }
  bool has_empty() const noexcept { return !simplices_.empty() && simplices_.front().empty(); }

  std::optional<std::size_t> find(const Simplex& s) const;
  std::optional<std::size_t> find_mask(std::uint64_t mask) const;

  /// Indices of codimension-one faces of simplex i that belong to the skeleton.
  /// Missing faces are reported through `missing`.
  std::vector<std::size_t> faces(std::size_t i, bool* missing = nullptr) const;

  bool is_closed() const;

 private:
  int m_ = 0;
  int max_dim_ = -1;
  std::vector<Simplex> simplices_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// All subsets of [m] with dimension <= max_dim in canonical base order.
Skeleton enumerate_skeleton(const SkeletonSpec& spec);

/// Binomial coefficient as double-free integer; returns 0 outside range.
std::uint64_t binomial(int n, int k);

/// Weight values stored densely by skeleton position. `argmax` is filled only
/// for matrix-induced weights.
struct Weight {
  std::vector<double> values;
  std::vector<Entry> argmax;

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const noexcept { return values.size(); }
  bool has_provenance() const noexcept { return !argmax.empty(); }
};

bool is_monotone(const Weight& w, const Skeleton& skeleton);

/// Throws invalid-matrix unless M is square, symmetric, and M_ii <= M_ij.
void validate_filtration_matrix(const Eigen::MatrixXd& M);

/// Vietoris-Rips rule: nonempty simplices take the largest entry over their
/// vertex pairs, the empty simplex the smallest diagonal entry.
Weight weight_from_matrix(const Eigen::MatrixXd& M, const Skeleton& skeleton);

/// A total order on skeleton positions. `sequence[r]` is the simplex at rank
/// r and `rank[i]` is the rank of simplex i.
struct BaseOrder {
  std::vector<std::size_t> sequence;
  std::vector<std::size_t> rank;

  static BaseOrder canonical(std::size_t n);
  static BaseOrder from_sequence(std::vector<std::size_t> sequence);

  std::size_t size() const noexcept { return sequence.size(); }
  bool is_linear_extension(const Skeleton& skeleton) const;
};

/// Sorts by weight and breaks ties by the base rank.
BaseOrder refine_preorder(const Weight& w, const BaseOrder& base, const Skeleton& skeleton);

}  // namespace topsel
