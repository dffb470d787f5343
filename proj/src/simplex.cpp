#include "topsel/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "topsel/error.hpp"

namespace topsel {

namespace {

bool canonical_less(const Simplex& a, const Simplex& b) {
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

// Advances a strictly increasing combination of {0..m-1} in lexicographic
// order. Returns false after the last one.
bool next_combination(std::vector<int>& c, int m) {
  const int r = static_cast<int>(c.size());
  int i = r - 1;
  while (i >= 0 && c[i] == m - r + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

std::uint64_t Simplex::mask() const noexcept {
  std::uint64_t bits = 0;
  for (int v : vertices) bits |= std::uint64_t{1} << v;
  return bits;
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices.begin(), other.vertices.end(), vertices.begin(),
                       vertices.end());
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

Skeleton::Skeleton(int m, std::vector<Simplex> simplices) : m_(m), simplices_(std::move(simplices)) {
  if (m < 1 || m > 64) fail(ErrorCode::InvalidSpec, "vertex count must be in [1, 64], got " + std::to_string(m));
  for (const auto& s : simplices_) {
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      if (s.vertices[i] < 0 || s.vertices[i] >= m)
        fail(ErrorCode::InvalidSpec, "vertex id out of range");
      if (i > 0 && s.vertices[i] <= s.vertices[i - 1])
        fail(ErrorCode::InvalidSpec, "simplex vertices must be strictly increasing");
    }
  }
  std::sort(simplices_.begin(), simplices_.end(), canonical_less);
  index_.reserve(simplices_.size());
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    if (!index_.emplace(simplices_[i].mask(), i).second)
      fail(ErrorCode::InvalidSpec, "duplicate simplex in skeleton");
    max_dim_ = std::max(max_dim_, simplices_[i].dim());
  }
}

std::optional<std::size_t> Skeleton::find(const Simplex& s) const { return find_mask(s.mask()); }

std::optional<std::size_t> Skeleton::find_mask(std::uint64_t mask) const {
  auto it = index_.find(mask);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Skeleton::faces(std::size_t i, bool* missing) const {
  std::vector<std::size_t> out;
  const Simplex& s = simplices_[i];
  if (s.empty()) return out;
  const std::uint64_t full = s.mask();
  out.reserve(s.vertices.size());
  for (int v : s.vertices) {
    auto f = find_mask(full & ~(std::uint64_t{1} << v));
    if (f) {
      out.push_back(*f);
    } else if (missing) {
      *missing = true;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Skeleton::is_closed() const {
  const int lowest = has_empty() ? -1 : 0;
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    if (simplices_[i].dim() - 1 < lowest) continue;
    bool missing = false;
    faces(i, &missing);
    if (missing) return false;
  }
  return true;
}

Skeleton enumerate_skeleton(const SkeletonSpec& spec) {
  if (spec.m < 1) fail(ErrorCode::InvalidSpec, "vertex count must be positive");
  if (spec.max_dim < -1 || spec.max_dim > spec.m - 1)
    fail(ErrorCode::InvalidSpec, "max_dim " + std::to_string(spec.max_dim) + " outside [-1, " +
                                     std::to_string(spec.m - 1) + "]");
  if (spec.m > 64) fail(ErrorCode::InvalidSpec, "explicit skeletons support at most 64 vertices");
  if (spec.max_dim == spec.m - 1 && spec.m > kMaxFullPowerSet)
    fail(ErrorCode::InvalidSpec, "full power set is limited to m <= " + std::to_string(kMaxFullPowerSet));

  std::uint64_t total = spec.include_empty ? 1 : 0;
  for (int d = 0; d <= spec.max_dim; ++d) total += binomial(spec.m, d + 1);
  if (total > (std::uint64_t{1} << 22)) fail(ErrorCode::InvalidSpec, "skeleton too large to materialize");

  std::vector<Simplex> out;
  out.reserve(total);
  if (spec.include_empty) out.push_back(Simplex{});
  for (int d = 0; d <= spec.max_dim; ++d) {
    std::vector<int> c(d + 1);
    std::iota(c.begin(), c.end(), 0);
    do {
      out.push_back(Simplex{c});
    } while (next_combination(c, spec.m));
  }
  return Skeleton(spec.m, std::move(out));
}

bool is_monotone(const Weight& w, const Skeleton& skeleton) {
  if (w.size() != skeleton.size()) return false;
  for (std::size_t i = 0; i < skeleton.size(); ++i) {
    for (std::size_t f : skeleton.faces(i)) {
      if (!(w[f] <= w[i])) return false;
    }
  }
  return true;
}

void validate_filtration_matrix(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols() || M.rows() == 0) fail(ErrorCode::InvalidMatrix, "filtration matrix must be square and nonempty");
  const Eigen::Index m = M.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!std::isfinite(M(i, j))) fail(ErrorCode::InvalidMatrix, "filtration matrix has non-finite entries");
      if (M(i, j) != M(j, i)) fail(ErrorCode::InvalidMatrix, "filtration matrix is not symmetric");
      if (M(i, i) > M(i, j))
        fail(ErrorCode::InvalidMatrix, "diagonal entry exceeds an off-diagonal entry in row " + std::to_string(i));
    }
  }
}

Weight weight_from_matrix(const Eigen::MatrixXd& M, const Skeleton& skeleton) {
  validate_filtration_matrix(M);
  if (M.rows() != skeleton.vertex_count()) fail(ErrorCode::InvalidMatrix, "matrix size does not match vertex count");

  Weight w;
  w.values.resize(skeleton.size());
  w.argmax.resize(skeleton.size());
  for (std::size_t s = 0; s < skeleton.size(); ++s) {
    const auto& vs = skeleton[s].vertices;
    if (vs.empty()) {
      int best = 0;
      for (int i = 1; i < M.rows(); ++i)
        if (M(i, i) < M(best, best)) best = i;
      w.values[s] = M(best, best);
      w.argmax[s] = Entry{best, best};
      continue;
    }
    Entry arg{vs[0], vs[0]};
    double best = M(vs[0], vs[0]);
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a; b < vs.size(); ++b) {
        const double x = M(vs[a], vs[b]);
        if (x > best) {
          best = x;
          arg = Entry{vs[a], vs[b]};
        }
      }
    }
    w.values[s] = best;
    w.argmax[s] = arg;
  }
  return w;
}

BaseOrder BaseOrder::canonical(std::size_t n) {
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  return from_sequence(std::move(seq));
}

BaseOrder BaseOrder::from_sequence(std::vector<std::size_t> sequence) {
  BaseOrder o;
  o.rank.assign(sequence.size(), sequence.size());
  for (std::size_t r = 0; r < sequence.size(); ++r) {
    if (sequence[r] >= sequence.size() || o.rank[sequence[r]] != sequence.size())
      fail(ErrorCode::InvalidArgument, "order sequence is not a permutation");
    o.rank[sequence[r]] = r;
  }
  o.sequence = std::move(sequence);
  return o;
}

bool BaseOrder::is_linear_extension(const Skeleton& skeleton) const {
  if (rank.size() != skeleton.size()) return false;
  for (std::size_t i = 0; i < skeleton.size(); ++i)
    for (std::size_t f : skeleton.faces(i))
      if (rank[f] > rank[i]) return false;
  return true;
}

BaseOrder refine_preorder(const Weight& w, const BaseOrder& base, const Skeleton& skeleton) {
  if (w.size() != skeleton.size() || base.size() != skeleton.size())
    fail(ErrorCode::InvalidArgument, "weight, base order and skeleton sizes differ");
  if (!is_monotone(w, skeleton)) fail(ErrorCode::InvalidWeight, "weight is not monotone on the skeleton");
  std::vector<std::size_t> seq = base.sequence;
  std::stable_sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  return BaseOrder::from_sequence(std::move(seq));
}

}  // namespace topsel
