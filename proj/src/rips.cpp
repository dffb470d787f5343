#include "topsel/rips.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "topsel/error.hpp"

namespace topsel {

namespace {

class BinomialTable {
 public:
  BinomialTable(int n, int k) : k_(k + 1), table_(static_cast<std::size_t>(n + 1) * (k + 1), 0) {
    for (int i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (int j = 1; j <= std::min(i, k); ++j) at(i, j) = at(i - 1, j - 1) + (j <= i - 1 ? at(i - 1, j) : 0);
    }
  }
  std::uint64_t operator()(int n, int k) const {
    if (n < 0 || k < 0 || k > n || k >= k_) return 0;
    return table_[static_cast<std::size_t>(n) * k_ + k];
  }

 private:
  std::uint64_t& at(int n, int k) { return table_[static_cast<std::size_t>(n) * k_ + k]; }
  int k_;
  std::vector<std::uint64_t> table_;
};

// All d-simplices of the (m-1)-simplex in lexicographic order, with their
// w_M values, argmax entries and filtration positions.
struct DimensionLayer {
  int dim = 0;
  int width = 0;                    // vertices per simplex
  std::vector<int> vertices;        // flattened, lexicographic order
  std::vector<double> value;        // by lex rank
  std::vector<Entry> argmax;        // by lex rank
  std::vector<std::uint32_t> order; // position -> lex rank
  std::vector<std::uint32_t> position;  // lex rank -> position

  std::span<const int> simplex(std::uint32_t lex) const {
    return {vertices.data() + static_cast<std::size_t>(lex) * width, static_cast<std::size_t>(width)};
  }
};

DimensionLayer build_layer(const Eigen::MatrixXd& M, int dim, std::uint64_t count) {
  const int m = static_cast<int>(M.rows());
  DimensionLayer layer;
  layer.dim = dim;
  layer.width = dim + 1;
  layer.vertices.resize(count * layer.width);
  layer.value.resize(count);
  layer.argmax.resize(count);

  std::vector<int> c(layer.width);
  std::iota(c.begin(), c.end(), 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::copy(c.begin(), c.end(), layer.vertices.begin() + static_cast<std::ptrdiff_t>(idx * layer.width));
    Entry arg{c[0], c[0]};
    double best = M(c[0], c[0]);
    for (int a = 0; a < layer.width; ++a) {
      for (int b = a; b < layer.width; ++b) {
        const double x = M(c[a], c[b]);
        if (x > best) {
          best = x;
          arg = Entry{c[a], c[b]};
        }
      }
    }
    layer.value[idx] = best;
    layer.argmax[idx] = arg;
    // next combination
    int i = layer.width - 1;
    while (i >= 0 && c[i] == m - layer.width + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < layer.width; ++j) c[j] = c[j - 1] + 1;
  }

  layer.order.resize(count);
  std::iota(layer.order.begin(), layer.order.end(), 0u);
  std::stable_sort(layer.order.begin(), layer.order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return layer.value[a] < layer.value[b]; });
  layer.position.resize(count);
  for (std::uint32_t p = 0; p < count; ++p) layer.position[layer.order[p]] = p;
  return layer;
}

std::uint64_t lex_rank_with(const BinomialTable& binom, std::span<const int> v, int m) {
  const int r = static_cast<int>(v.size());
  std::uint64_t colex = 0;
  for (int i = 0; i < r; ++i) colex += binom(m - 1 - v[r - 1 - i], i + 1);
  return binom(m, r) - 1 - colex;
}

struct RawPair {
  int degree;
  std::uint32_t birth_lex;  // lex rank in layer `degree` (unused for degree -1)
  std::uint32_t death_lex;  // lex rank in layer `degree + 1`
};

}  // namespace

std::uint64_t lex_rank(std::span<const int> vertices, int m) {
  BinomialTable binom(m, static_cast<int>(vertices.size()));
  return lex_rank_with(binom, vertices, m);
}

std::uint64_t canonical_rank(std::span<const int> vertices, int m) {
  if (vertices.empty()) return 0;
  std::uint64_t offset = 1;
  for (std::size_t s = 1; s < vertices.size(); ++s) offset += binomial(m, static_cast<int>(s));
  return offset + lex_rank(vertices, m);
}

GradedDiagram rips_diagram(const Eigen::MatrixXd& M, std::span<const int> degrees, bool validate) {
  if (validate) validate_filtration_matrix(M);
  const int m = static_cast<int>(M.rows());

  GradedDiagram out;
  std::vector<int> wanted;
  for (int k : degrees) {
    if (k < -1 || k > m - 1) {
      ++out.ignored_degrees;
      continue;
    }
    wanted.push_back(k);
  }
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  if (wanted.empty()) return out;

  const int max_k = wanted.back();
  const int top_dim = std::min(max_k + 1, m - 1);
  const BinomialTable binom(m, top_dim + 2);

  std::vector<DimensionLayer> layers;
  layers.reserve(top_dim + 1);
  for (int d = 0; d <= top_dim; ++d) layers.push_back(build_layer(M, d, binom(m, d + 1)));

  std::vector<RawPair> raw;
  // Degree -1: the empty simplex dies at the first vertex.
  raw.push_back({-1, 0, layers[0].order[0]});
  std::vector<char> cleared(layers[0].value.size(), 0);
  cleared[layers[0].order[0]] = 1;

  std::vector<int> coface(top_dim + 2);
  std::vector<std::uint32_t> scratch;
  for (int k = 0; k <= max_k && k + 1 <= top_dim; ++k) {
    const DimensionLayer& lo = layers[k];
    const DimensionLayer& hi = layers[k + 1];
    std::vector<char> next_cleared(hi.value.size(), 0);
    const std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> owner(hi.value.size(), none);  // pivot position -> column slot
    std::vector<std::vector<std::uint32_t>> columns;

    for (std::size_t p = lo.order.size(); p-- > 0;) {
      const std::uint32_t lex = lo.order[p];
      if (cleared[lex]) continue;
      auto verts = lo.simplex(lex);
      std::vector<std::uint32_t> col;
      col.reserve(static_cast<std::size_t>(m - k - 1));
      std::size_t ins = 0;
      for (int x = 0; x < m; ++x) {
        if (ins < verts.size() && verts[ins] == x) {
          ++ins;
          continue;
        }
        std::size_t w = 0;
        bool placed = false;
        for (std::size_t i = 0; i < verts.size(); ++i) {
          if (!placed && x < verts[i]) {
            coface[w++] = x;
            placed = true;
          }
          coface[w++] = verts[i];
        }
        if (!placed) coface[w++] = x;
        const auto r = lex_rank_with(binom, std::span<const int>(coface.data(), w), m);
        col.push_back(hi.position[r]);
      }
      std::sort(col.begin(), col.end());
      while (!col.empty() && owner[col.front()] != none) {
        const auto& src = columns[owner[col.front()]];
        scratch.clear();
        std::set_symmetric_difference(col.begin(), col.end(), src.begin(), src.end(), std::back_inserter(scratch));
        col.swap(scratch);
      }
      if (!col.empty()) {
        const std::uint32_t pivot = col.front();
        owner[pivot] = static_cast<std::uint32_t>(columns.size());
        columns.push_back(std::move(col));
        raw.push_back({k, lex, hi.order[pivot]});
        next_cleared[hi.order[pivot]] = 1;
      }
    }
    cleared.swap(next_cleared);
  }

  for (const RawPair& rp : raw) {
    if (!std::binary_search(wanted.begin(), wanted.end(), rp.degree)) continue;
    DiagramPoint pt;
    pt.degree = rp.degree;
    Provenance prov;
    const DimensionLayer& dl = layers[rp.degree + 1];
    auto dv = dl.simplex(rp.death_lex);
    prov.death.vertices.assign(dv.begin(), dv.end());
    prov.death_entry = dl.argmax[rp.death_lex];
    pt.death = dl.value[rp.death_lex];
    if (rp.degree == -1) {
      // the empty simplex: smallest diagonal entry, first index on ties
      int best = 0;
      for (int i = 1; i < m; ++i)
        if (M(i, i) < M(best, best)) best = i;
      pt.birth = M(best, best);
      prov.birth_entry = Entry{best, best};
      prov.birth_rank = 0;
    } else {
      const DimensionLayer& bl = layers[rp.degree];
      auto bv = bl.simplex(rp.birth_lex);
      prov.birth.vertices.assign(bv.begin(), bv.end());
      prov.birth_entry = bl.argmax[rp.birth_lex];
      pt.birth = bl.value[rp.birth_lex];
      prov.birth_rank = canonical_rank(bv, m);
    }
    prov.death_rank = canonical_rank(dv, m);
    pt.provenance = std::move(prov);
    out.points.push_back(std::move(pt));
  }
  std::sort(out.points.begin(), out.points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.provenance->death_rank < b.provenance->death_rank;
  });
  return out;
}

}  // namespace topsel
