#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracle {

namespace {

int dim_of(std::uint32_t mask) { return std::popcount(mask) - 1; }

std::vector<std::uint32_t> of_dim(int m, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s : power_set(m))
    if (dim_of(s) == k) out.push_back(s);
  return out;
}

// Boundary of the chosen columns restricted to the chosen rows.
std::vector<std::vector<std::uint8_t>> boundary_rows(const std::vector<std::uint32_t>& rows,
                                                     const std::vector<std::uint32_t>& cols) {
  std::vector<std::vector<std::uint8_t>> out(rows.size(), std::vector<std::uint8_t>(cols.size(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if ((rows[r] & cols[c]) == rows[r] && std::popcount(cols[c]) == std::popcount(rows[r]) + 1) out[r][c] = 1;
  return out;
}

double cost(double b1, double d1, double b2, double d2, double q) {
  const double x = std::abs(b1 - b2), y = std::abs(d1 - d2);
  if (std::isinf(q)) return std::max(x, y);
  return std::pow(std::pow(x, q) + std::pow(y, q), 1.0 / q);
}

double to_diagonal(double b, double d, double q) {
  const double half = (d - b) / 2;
  if (std::isinf(q)) return half;
  return std::pow(2.0 * std::pow(half, q), 1.0 / q);
}

}  // namespace

std::vector<std::uint32_t> power_set(int m) {
  std::vector<std::uint32_t> out(std::size_t{1} << m);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

int gf2_rank(std::vector<std::vector<std::uint8_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t r0 = 0;
  for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
    std::size_t piv = r0;
    while (piv < rows.size() && !rows[piv][c]) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r0]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != r0 && rows[r][c])
        for (std::size_t j = c; j < cols; ++j) rows[r][j] ^= rows[r0][j];
    ++r0;
    ++rank;
  }
  return rank;
}

int persistent_betti(int m, const std::vector<double>& w, int k, double a, double b) {
  auto sub = [&](int dim, double level) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s : of_dim(m, dim))
      if (w[s] <= level) out.push_back(s);
    return out;
  };
  const auto ka = sub(k, a);
  const auto km1a = sub(k - 1, a);
  const auto kb = sub(k, b);
  const auto kp1b = sub(k + 1, b);
  const int rank_dk_a = (k - 1 >= -1) ? gf2_rank(boundary_rows(km1a, ka)) : 0;
  const int rank_dk1_b = gf2_rank(boundary_rows(kb, kp1b));
  std::vector<std::uint32_t> outside;
  for (std::uint32_t s : kb)
    if (!(w[s] <= a)) outside.push_back(s);
  const int rank_outside = gf2_rank(boundary_rows(outside, kp1b));
  return static_cast<int>(ka.size()) - rank_dk_a - rank_dk1_b + rank_outside;
}

std::vector<Point> rips_diagram(const Eigen::MatrixXd& M) {
  const int m = static_cast<int>(M.rows());
  auto weight = [&](std::uint32_t s) {
    if (s == 0) return M.diagonal().minCoeff();
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        if ((s >> i & 1) && (s >> j & 1)) best = std::max(best, M(i, j));
    return best;
  };
  auto lex_less = [](std::uint32_t x, std::uint32_t y) {
    // Compare sorted vertex lists of equal size lexicographically.
    while (x && y) {
      const int a = std::countr_zero(x), b = std::countr_zero(y);
      if (a != b) return a < b;
      x &= x - 1;
      y &= y - 1;
    }
    return false;
  };
  std::vector<std::uint32_t> order = power_set(m);
  std::vector<double> w(order.size());
  for (std::uint32_t s : order) w[s] = weight(s);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (w[x] != w[y]) return w[x] < w[y];
    if (std::popcount(x) != std::popcount(y)) return std::popcount(x) < std::popcount(y);
    return lex_less(x, y);
  });
  const std::size_t n = order.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<std::vector<std::uint8_t>> cols(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint32_t s = order[c];
    for (std::uint32_t t = s; t; t &= t - 1) cols[c][pos[s & ~(t & -t)]] = 1;
  }
  std::vector<long> low_owner(n, -1);
  std::vector<Point> out;
  for (std::size_t c = 0; c < n; ++c) {
    for (;;) {
      long low = -1;
      for (long r = static_cast<long>(n) - 1; r >= 0; --r)
        if (cols[c][static_cast<std::size_t>(r)]) {
          low = r;
          break;
        }
      if (low < 0) break;
      const long other = low_owner[static_cast<std::size_t>(low)];
      if (other < 0) {
        low_owner[static_cast<std::size_t>(low)] = static_cast<long>(c);
        const std::uint32_t birth = order[static_cast<std::size_t>(low)];
        out.push_back({dim_of(birth), w[birth], w[order[c]]});
        break;
      }
      for (std::size_t r = 0; r < n; ++r) cols[c][r] ^= cols[static_cast<std::size_t>(other)][r];
    }
  }
  return out;
}

double wasserstein(const std::vector<std::pair<double, double>>& a, const std::vector<std::pair<double, double>>& b,
                   double q) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  // Rows: a then diagonal slots for b. Columns: b then diagonal slots for a.
  auto c = [&](std::size_t i, std::size_t j) {
    if (i < na && j < nb) return cost(a[i].first, a[i].second, b[j].first, b[j].second, q);
    if (i < na) return j - nb == i ? to_diagonal(a[i].first, a[i].second, q) : std::numeric_limits<double>::infinity();
    if (j < nb) return i - na == j ? to_diagonal(b[j].first, b[j].second, q) : std::numeric_limits<double>::infinity();
    return 0.0;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = c(i, perm[i]);
      if (std::isinf(x)) {
        total = x;
        break;
      }
      total = std::isinf(q) ? std::max(total, x) : total + std::pow(x, q);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (n == 0) return 0.0;
  return std::isinf(q) ? best : std::pow(best, 1.0 / q);
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
  double lo = y.minCoeff() - 1.0, hi = y.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((y.array() - mid).cwiseMax(0.0).sum() > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return (y.array() - 0.5 * (lo + hi)).cwiseMax(0.0);
}

Eigen::MatrixXd window_distance(const Eigen::MatrixXd& x, int column, int window) {
  const Eigen::Index m = x.rows() - window + 1;
  Eigen::MatrixXd d(m, m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l) {
      double s = 0;
      for (int q = 0; q < window; ++q) s += std::abs(x(k + q, column) - x(l + q, column));
      d(k, l) = s;
    }
  return d;
}

std::vector<double> random_monotone_weight(int m, std::mt19937_64& rng, int levels) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::uint32_t> masks = power_set(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t x, std::uint32_t y) { return std::popcount(x) < std::popcount(y); });
  std::vector<double> w(masks.size());
  for (std::uint32_t s : masks) {
    double v = u(rng);
    if (levels > 0) v = std::floor(v * levels) / levels;
    for (std::uint32_t t = s; t; t &= t - 1) v = std::max(v, w[s & ~(t & -t)]);
    w[s] = v;
  }
  return w;
}

Eigen::MatrixXd random_filtration_matrix(int m, std::mt19937_64& rng, bool zero_diagonal) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) M(i, j) = M(j, i) = 0.2 + u(rng);
  for (int i = 0; i < m; ++i) M(i, i) = zero_diagonal ? 0.0 : 0.2 * u(rng);
  return M;
}

}  // namespace oracle
