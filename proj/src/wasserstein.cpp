#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "topsel/error.hpp"
#include "topsel/persistence.hpp"

namespace topsel {

namespace {

using Point = std::pair<double, double>;

// Min-cost perfect assignment on a dense n x n cost matrix (shortest
// augmenting paths with potentials, O(n^3)). Returns column -> row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_to_row(n);
  for (int j = 1; j <= n; ++j) col_to_row[j - 1] = p[j] - 1;
  return col_to_row;
}

// Hopcroft-Karp feasibility of a perfect matching using edges allowed[i][j].
bool has_perfect_matching(const std::vector<std::vector<int>>& adj, int n) {
  const int nil = -1;
  std::vector<int> match_l(n, nil), match_r(n, nil), dist(n);
  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int i = 0; i < n; ++i) {
      if (match_l[i] == nil) {
        dist[i] = 0;
        q.push(i);
      } else {
        dist[i] = -1;
      }
    }
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int j : adj[i]) {
        const int k = match_r[j];
        if (k == nil) {
          found = true;
        } else if (dist[k] < 0) {
          dist[k] = dist[i] + 1;
          q.push(k);
        }
      }
    }
    return found;
  };
  std::vector<std::size_t> it(n);
  auto dfs = [&](auto&& self, int i) -> bool {
    for (; it[i] < adj[i].size(); ++it[i]) {
      const int j = adj[i][it[i]];
      const int k = match_r[j];
      if (k == nil || (dist[k] == dist[i] + 1 && self(self, k))) {
        match_l[i] = j;
        match_r[j] = i;
        return true;
      }
    }
    dist[i] = -1;
    return false;
  };
  int matched = 0;
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int i = 0; i < n; ++i)
      if (match_l[i] == nil && dfs(dfs, i)) ++matched;
  }
  return matched == n;
}

double ground_q(const Point& a, const Point& b, double q) {
  const double dx = std::abs(a.first - b.first), dy = std::abs(a.second - b.second);
  if (std::isinf(q)) return std::max(dx, dy);
  if (q == 1.0) return dx + dy;
  return std::pow(std::pow(dx, q) + std::pow(dy, q), 1.0 / q);
}

// q-norm distance to the nearest diagonal point ((b+d)/2, (b+d)/2).
double diagonal_q(const Point& a, double q) {
  const double half = (a.second - a.first) / 2.0;
  if (std::isinf(q)) return half;
  return half * std::pow(2.0, 1.0 / q);
}

std::vector<Point> off_diagonal(std::span<const Point> pts) {
  std::vector<Point> out;
  for (const auto& p : pts) {
    if (!std::isfinite(p.first) || !std::isfinite(p.second))
      fail(ErrorCode::InvalidArgument, "Wasserstein distance needs finite diagrams");
    if (p.second != p.first) out.push_back(p);
  }
  return out;
}

}  // namespace

double wasserstein_points(std::span<const Point> a_in, std::span<const Point> b_in, double q) {
  if (!(q >= 1.0)) fail(ErrorCode::InvalidOrder, "Wasserstein order must satisfy q >= 1");
  const auto a = off_diagonal(a_in);
  const auto b = off_diagonal(b_in);
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  const int n = na + nb;
  if (n == 0) return 0.0;

  // Rows: a points, then diagonal slots for b. Columns: b points, then
  // diagonal slots for a. Each point may only use its own diagonal slot.
  const bool bottleneck = std::isinf(q);
  const double blocked = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double d;
      if (i < na && j < nb) d = ground_q(a[i], b[j], q);
      else if (i < na) d = (j - nb == i) ? diagonal_q(a[i], q) : blocked;
      else if (j < nb) d = (i - na == j) ? diagonal_q(b[j], q) : blocked;
      else d = 0.0;
      dist[i][j] = d;
    }
  }

  if (bottleneck) {
    std::vector<double> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : dist)
      for (double d : row)
        if (std::isfinite(d)) candidates.push_back(d);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      std::vector<std::vector<int>> adj(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (dist[i][j] <= candidates[mid]) adj[i].push_back(j);
      if (has_perfect_matching(adj, n)) hi = mid;
      else lo = mid + 1;
    }
    return candidates[lo];
  }

  // Powered costs; blocked cells get a value larger than any full assignment.
  double finite_total = 0.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::isfinite(dist[i][j])) {
        cost[i][j] = std::pow(dist[i][j], q);
        finite_total += cost[i][j];
      }
  const double big = 2.0 * finite_total + 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(dist[i][j])) cost[i][j] = big;

  const auto col_to_row = solve_assignment(cost);
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += cost[col_to_row[j]][j];
  return std::pow(total, 1.0 / q);
}

double wasserstein(const GradedDiagram& d1, const GradedDiagram& d2, double q) {
  if (!(q >= 1.0)) fail(ErrorCode::InvalidOrder, "Wasserstein order must satisfy q >= 1");
  std::vector<int> degrees = d1.degrees();
  for (int k : d2.degrees()) degrees.push_back(k);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  double acc = 0.0;
  for (int k : degrees) {
    std::vector<Point> a, b;
    for (const auto& p : d1.points)
      if (p.degree == k) a.emplace_back(p.birth, p.death);
    for (const auto& p : d2.points)
      if (p.degree == k) b.emplace_back(p.birth, p.death);
    const double w = wasserstein_points(a, b, q);
    if (std::isinf(q)) acc = std::max(acc, w);
    else acc += std::pow(w, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

}  // namespace topsel
