#include "topsel/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topsel/error.hpp"

namespace topsel {

namespace {

// In-place symmetric difference of two ascending index lists.
void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
                std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

constexpr std::uint32_t kNoOwner = std::numeric_limits<std::uint32_t>::max();

// Dense Z/2 vector for the persistent Betti oracle.
class BitVector {
 public:
  explicit BitVector(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void operator^=(const BitVector& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  }
  // Highest set bit, or -1 when zero.
  long highest() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w]) return static_cast<long>(w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(words_[w])));
    }
    return -1;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Incremental row-echelon basis keyed by highest bit.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n) : pivots_(n, -1) {}

  // Returns true when v was independent of the basis.
  bool insert(BitVector v) {
    for (long h = v.highest(); h >= 0; h = v.highest()) {
      if (pivots_[h] < 0) {
        pivots_[h] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      v ^= rows_[pivots_[h]];
    }
    return false;
  }
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  std::vector<long> pivots_;
  std::vector<BitVector> rows_;
};

}  // namespace

BoundaryMatrix build_boundary(const Skeleton& skeleton, const BaseOrder& order) {
  if (order.size() != skeleton.size()) fail(ErrorCode::InvalidArgument, "order size does not match skeleton");
  if (!order.is_linear_extension(skeleton))
    fail(ErrorCode::InvalidArgument, "order is not a linear extension of the face order");

  const bool with_empty = skeleton.has_empty();
  BoundaryMatrix bm;
  bm.order = order;
  bm.columns.resize(skeleton.size());
  bm.dims.resize(skeleton.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t s = order.sequence[r];
    const Simplex& simplex = skeleton[s];
    bm.dims[r] = simplex.dim();
    if (simplex.empty() || (simplex.dim() == 0 && !with_empty)) continue;
    bool missing = false;
    auto faces = skeleton.faces(s, &missing);
    if (missing) fail(ErrorCode::IncompleteSkeleton, "a codimension-one face is missing from the skeleton");
    auto& col = bm.columns[r];
    col.reserve(faces.size());
    for (std::size_t f : faces) col.push_back(static_cast<std::uint32_t>(order.rank[f]));
    std::sort(col.begin(), col.end());
  }
  return bm;
}

Reduction reduce(const BoundaryMatrix& boundary, ReduceOptions options) {
  const std::size_t n = boundary.columns.size();
  Reduction out;
  out.reduced = boundary.columns;
  std::vector<std::uint32_t> owner(n, kNoOwner);  // low row -> column
  std::vector<bool> cleared(n, false);
  std::vector<std::uint32_t> scratch;

  std::vector<std::uint32_t> schedule(n);
  for (std::uint32_t r = 0; r < n; ++r) schedule[r] = r;
  if (options.clearing) {
    std::stable_sort(schedule.begin(), schedule.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return boundary.dims[a] > boundary.dims[b]; });
  }

  for (std::uint32_t j : schedule) {
    auto& col = out.reduced[j];
    if (cleared[j]) {
      col.clear();
      continue;
    }
    while (!col.empty() && owner[col.back()] != kNoOwner) add_column(col, out.reduced[owner[col.back()]], scratch);
    if (!col.empty()) {
      owner[col.back()] = j;
      if (options.clearing) cleared[col.back()] = true;
    }
  }

  const auto& seq = boundary.order.sequence;
  for (std::uint32_t j = 0; j < n; ++j) {
    if (!out.reduced[j].empty()) out.matching.pairs.push_back({seq[out.reduced[j].back()], seq[j]});
  }
  for (std::uint32_t r = 0; r < n; ++r) {
    if (out.reduced[r].empty() && owner[r] == kNoOwner) out.matching.essential.push_back(seq[r]);
  }
  std::sort(out.matching.pairs.begin(), out.matching.pairs.end());
  std::sort(out.matching.essential.begin(), out.matching.essential.end());
  return out;
}

std::size_t BirthDeathMatching::count_in_degree(const Skeleton& skeleton, int k) const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [&](const BirthDeathPair& p) {
    return skeleton[p.birth].dim() == k;
  }));
}

std::vector<DiagramPoint> GradedDiagram::in_degree(int k) const {
  std::vector<DiagramPoint> out;
  for (const auto& p : points)
    if (p.degree == k) out.push_back(p);
  return out;
}

std::vector<int> GradedDiagram::degrees() const {
  std::vector<int> out;
  for (const auto& p : points) out.push_back(p.degree);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GradedDiagram GradedDiagram::scaled(double lambda) const {
  GradedDiagram out = *this;
  for (auto& p : out.points) {
    p.birth *= lambda;
    p.death *= lambda;
  }
  return out;
}

GradedDiagram diagram(const BirthDeathMatching& matching, const Weight& w, const Skeleton& skeleton,
                      const BaseOrder& base, std::span<const int> degrees) {
  const int m = skeleton.vertex_count();
  std::vector<int> wanted;
  GradedDiagram out;
  for (int k : degrees) {
    if (k < -1 || k > m - 1) {
      ++out.ignored_degrees;
      continue;
    }
    wanted.push_back(k);
  }
  for (const auto& pr : matching.pairs) {
    const int k = skeleton[pr.birth].dim();
    if (std::find(wanted.begin(), wanted.end(), k) == wanted.end()) continue;
    DiagramPoint pt;
    pt.degree = k;
    pt.birth = w[pr.birth];
    pt.death = w[pr.death];
    Provenance prov;
    prov.birth = skeleton[pr.birth];
    prov.death = skeleton[pr.death];
    if (w.has_provenance()) {
      prov.birth_entry = w.argmax[pr.birth];
      prov.death_entry = w.argmax[pr.death];
    }
    prov.birth_rank = base.rank[pr.birth];
    prov.death_rank = base.rank[pr.death];
    pt.provenance = std::move(prov);
    out.points.push_back(std::move(pt));
  }
  std::sort(out.points.begin(), out.points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.provenance->death_rank < b.provenance->death_rank;
  });
  return out;
}

GradedDiagram compute_diagram(const Skeleton& skeleton, const Weight& w, std::span<const int> degrees,
                              ReduceOptions options) {
  const BaseOrder base = BaseOrder::canonical(skeleton.size());
  const BaseOrder refined = refine_preorder(w, base, skeleton);
  const Reduction red = reduce(build_boundary(skeleton, refined), options);
  return diagram(red.matching, w, skeleton, base, degrees);
}

std::int64_t f_plus(int m, int k) {
  if (m < 1) fail(ErrorCode::InvalidDegree, "vertex count must be positive");
  if (k < -1 || k > m - 1)
    fail(ErrorCode::InvalidDegree, "degree " + std::to_string(k) + " outside [-1, " + std::to_string(m - 1) + "]");
  std::int64_t total = 0;
  for (int j = -1; j <= k; ++j) {
    const auto term = static_cast<std::int64_t>(binomial(m, j + 1));
    total += ((k - j) % 2 == 0) ? term : -term;
  }
  return total;
}

int persistent_betti(const Skeleton& skeleton, const Weight& w, int k, double a, double b) {
  if (a > b) fail(ErrorCode::InvalidInterval, "persistent Betti number needs a <= b");
  if (w.size() != skeleton.size()) fail(ErrorCode::InvalidArgument, "weight size does not match skeleton");

  // Local indices of the (k-1)-, k- and (k+1)-simplices inside K_b.
  std::vector<long> local(skeleton.size(), -1);
  std::size_t n_lower = 0, n_mid = 0, n_upper = 0;
  for (std::size_t i = 0; i < skeleton.size(); ++i) {
    if (w[i] > b) continue;
    const int d = skeleton[i].dim();
    if (d == k - 1) local[i] = static_cast<long>(n_lower++);
    else if (d == k) local[i] = static_cast<long>(n_mid++);
    else if (d == k + 1) local[i] = static_cast<long>(n_upper++);
  }

  // Cycles of K_a: eliminate on the boundary part, collect combinations that vanish.
  std::vector<BitVector> cycles;
  {
    std::vector<long> pivot(n_lower, -1);
    std::vector<std::pair<BitVector, BitVector>> rows;  // (boundary, combination)
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
      if (skeleton[i].dim() != k || w[i] > a) continue;
      BitVector bnd(n_lower), comb(n_mid);
      comb.flip(static_cast<std::size_t>(local[i]));
      for (std::size_t f : skeleton.faces(i)) bnd.flip(static_cast<std::size_t>(local[f]));
      for (long h = bnd.highest(); h >= 0; h = bnd.highest()) {
        if (pivot[h] < 0) break;
        bnd ^= rows[pivot[h]].first;
        comb ^= rows[pivot[h]].second;
      }
      const long h = bnd.highest();
      if (h < 0) {
        cycles.push_back(std::move(comb));
      } else {
        pivot[h] = static_cast<long>(rows.size());
        rows.emplace_back(std::move(bnd), std::move(comb));
      }
    }
  }

  EchelonBasis boundaries(n_mid);
  for (std::size_t i = 0; i < skeleton.size(); ++i) {
    if (skeleton[i].dim() != k + 1 || w[i] > b) continue;
    BitVector v(n_mid);
    for (std::size_t f : skeleton.faces(i)) v.flip(static_cast<std::size_t>(local[f]));
    boundaries.insert(std::move(v));
  }
  const std::size_t rank_b = boundaries.rank();
  std::size_t rank_sum = rank_b;
  for (auto& z : cycles)
    if (boundaries.insert(z)) ++rank_sum;
  // dim Z_a - dim(Z_a ∩ B_b) = dim(Z_a + B_b) - dim B_b
  return static_cast<int>(rank_sum - rank_b);
}

int quadrant_count(const GradedDiagram& d, int k, double a, double b) {
  int c = 0;
  for (const auto& p : d.points)
    if (p.degree == k && p.birth <= a && p.death > b) ++c;
  return c;
}

AugmentedExtension extend_to_augmented(const Skeleton& complex, const Weight& w) {
  if (complex.has_empty()) fail(ErrorCode::InvalidComplex, "input complex must not contain the empty simplex");
  if (complex.size() == 0) fail(ErrorCode::InvalidComplex, "input complex is empty");
  if (w.size() != complex.size()) fail(ErrorCode::InvalidArgument, "weight size does not match complex");
  if (!complex.is_closed()) fail(ErrorCode::InvalidComplex, "input is not closed under taking faces");
  if (!is_monotone(w, complex)) fail(ErrorCode::InvalidWeight, "weight is not monotone on the complex");

  const int m = complex.vertex_count();
  AugmentedExtension ext;
  ext.skeleton = enumerate_skeleton({m, m - 1, true});
  ext.min_value = *std::min_element(w.values.begin(), w.values.end());
  ext.max_value = *std::max_element(w.values.begin(), w.values.end());
  double range = ext.max_value - ext.min_value;
  if (range == 0.0) range = 1.0;  // constant weight: keep the added values strictly apart

  ext.weight.values.resize(ext.skeleton.size());
  ext.original.assign(ext.skeleton.size(), false);
  for (std::size_t i = 0; i < ext.skeleton.size(); ++i) {
    const Simplex& s = ext.skeleton[i];
    if (s.empty()) {
      ext.weight.values[i] = ext.min_value - range;
    } else if (auto j = complex.find(s)) {
      ext.weight.values[i] = w[*j];
      ext.original[i] = true;
    } else {
      ext.weight.values[i] = ext.max_value + range;
    }
  }
  return ext;
}

GradedDiagram ordinary_diagram(const GradedDiagram& augmented, const AugmentedExtension& ext) {
  GradedDiagram out;
  auto is_original = [&](const Simplex& s) {
    auto i = ext.skeleton.find(s);
    return i && ext.original[*i];
  };
  for (const auto& p : augmented.points) {
    if (!p.provenance) fail(ErrorCode::InvalidArgument, "conversion needs birth/death provenance");
    const Provenance& prov = *p.provenance;
    if (p.degree == -1) {
      if (!is_original(prov.death)) continue;
      DiagramPoint q = p;
      q.degree = 0;
      q.birth = p.death;
      q.death = kInfinity;
      out.points.push_back(std::move(q));
      continue;
    }
    if (!is_original(prov.birth)) continue;
    DiagramPoint q = p;
    if (!is_original(prov.death)) q.death = kInfinity;
    out.points.push_back(std::move(q));
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const DiagramPoint& a, const DiagramPoint& b) { return a.degree < b.degree; });
  return out;
}

}  // namespace topsel
