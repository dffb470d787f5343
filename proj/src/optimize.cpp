#include "topsel/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "topsel/error.hpp"

namespace topsel {

namespace {

constexpr double kFeasTol = 1e-12;

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

// Clamp tiny negatives and renormalize so emitted points stay on the simplex.
void sanitize(Eigen::VectorXd& v) {
  v = v.cwiseMax(0.0);
  const double s = v.sum();
  if (s > 0.0) v /= s;
}

Evaluation checked_eval(const AscentConfig& cfg, const ComponentDistances& cd, const Eigen::VectorXd& v, int step) {
  Evaluation e = evaluate_at(cfg.functional, cd, as_span(v));
  if (!e.report.grad.allFinite() || !std::isfinite(e.report.value))
    fail(ErrorCode::Numeric, "non-finite gradient at step " + std::to_string(step));
  return e;
}

// Projection of g onto the tangent cone of the simplex at v: coordinates
// pinned at 0 that would go negative are frozen, the rest get g minus their mean.
Eigen::VectorXd admissible_direction(const Eigen::VectorXd& v, const Eigen::VectorXd& g) {
  const Eigen::Index p = v.size();
  std::vector<char> free(static_cast<std::size_t>(p), 1);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(p);
  for (;;) {
    double sum = 0.0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < p; ++i)
      if (free[static_cast<std::size_t>(i)]) {
        sum += g(i);
        ++count;
      }
    if (count == 0) return Eigen::VectorXd::Zero(p);
    const double mean = sum / static_cast<double>(count);
    bool changed = false;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (!free[static_cast<std::size_t>(i)]) {
        d(i) = 0.0;
        continue;
      }
      d(i) = g(i) - mean;
      if (v(i) <= 0.0 && d(i) < 0.0) {
        free[static_cast<std::size_t>(i)] = 0;
        changed = true;
      }
    }
    if (!changed) return d;
  }
}

bool same_direction(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max({a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>(), 1.0});
  return (a - b).lpNorm<Eigen::Infinity>() <= 1e-9 * scale;
}

}  // namespace

void AscentConfig::validate() const {
  if (steps < 1) fail(ErrorCode::InvalidArgument, "step count must be positive");
  if (step_sizes.size() != 1 && step_sizes.size() != static_cast<std::size_t>(steps))
    fail(ErrorCode::InvalidArgument, "expected one step size or one per step");
  for (double eta : step_sizes)
    if (!(eta > 0.0) || !std::isfinite(eta)) fail(ErrorCode::InvalidArgument, "step sizes must be positive and finite");
  if (!(grad_tol >= 0.0)) fail(ErrorCode::InvalidArgument, "gradient tolerance must be nonnegative");
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
  const Eigen::Index p = y.size();
  if (p == 0) fail(ErrorCode::InvalidVector, "cannot project an empty vector");
  if (!y.allFinite()) fail(ErrorCode::InvalidVector, "cannot project a non-finite vector");
  if (y.minCoeff() >= 0.0 && std::abs(y.sum() - 1.0) <= kFeasTol) return y;

  std::vector<double> u(y.data(), y.data() + p);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
  }
  Eigen::VectorXd x = (y.array() - theta).cwiseMax(0.0);
  sanitize(x);
  return x;
}

Eigen::VectorXd barycenter(Eigen::Index p) {
  if (p < 1) fail(ErrorCode::InvalidVector, "simplex dimension must be positive");
  return Eigen::VectorXd::Constant(p, 1.0 / static_cast<double>(p));
}

GradientPath ascend_steps(const ComponentDistances& cd, const AscentConfig& cfg) {
  cfg.validate();
  GradientPath path;
  Eigen::VectorXd v = barycenter(cd.components());
  Evaluation cur = checked_eval(cfg, cd, v, 0);
  path.points.push_back(v);
  path.values.push_back(cur.report.value);

  for (int j = 0; j < cfg.steps; ++j) {
    const Eigen::VectorXd& d = cur.report.projected_grad;
    if (cfg.grad_tol > 0.0 && d.lpNorm<Eigen::Infinity>() < cfg.grad_tol) {
      path.stopped_early = true;
      break;
    }
    const Eigen::VectorXd y = v + cfg.step_size(j) * d;
    StepEvent ev;
    ev.projected = y.minCoeff() < 0.0;
    v = project_simplex(y);
    Evaluation next = checked_eval(cfg, cd, v, j + 1);
    ev.region_crossed = next.report.active_pairs != cur.report.active_pairs;
    path.points.push_back(v);
    path.values.push_back(next.report.value);
    path.events.push_back(ev);
    cur = std::move(next);
  }
  return path;
}

double boundary_step(const ComponentDistances& cd, const Eigen::VectorXd& v, const Eigen::VectorXd& d, bool* crossing,
                     double prune_above) {
  const Eigen::Index m = cd.points();
  const Eigen::MatrixXd A = combo_distance(cd, as_span(v));
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < cd.components(); ++j)
    if (d(j) != 0.0) B.noalias() += d(j) * cd.mats[static_cast<std::size_t>(j)];

  struct Affine {
    double a, b;
  };
  std::vector<Affine> lines;
  lines.reserve(static_cast<std::size_t>(m * (m + 1) / 2));
  double scale = 1.0;
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index r = 0; r <= c; ++r) {
      if (A(r, c) > prune_above) continue;
      lines.push_back({A(r, c), B(r, c)});
      scale = std::max(scale, std::abs(A(r, c)));
    }
  const double tie = 1e-12 * scale;

  double best = std::numeric_limits<double>::infinity();
  bool from_tie = false;
  for (std::size_t e = 0; e < lines.size(); ++e)
    for (std::size_t f = e + 1; f < lines.size(); ++f) {
      const double gap = lines[f].a - lines[e].a;
      const double closing = lines[e].b - lines[f].b;
      if (std::abs(gap) <= tie || closing == 0.0) continue;
      const double t = gap / closing;
      if (t > 0.0 && t < best) {
        best = t;
        from_tie = true;
      }
    }
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (d(i) < 0.0) {
      const double t = v(i) / -d(i);
      if (t <= best) {
        best = t;
        from_tie = false;
      }
    }
  if (crossing) *crossing = from_tie;
  return best;
}

GradientPath ascend_exact(const ComponentDistances& cd, const AscentConfig& cfg) {
  cfg.validate();
  constexpr int kMaxProbes = 4;
  GradientPath path;
  Eigen::VectorXd v = barycenter(cd.components());
  Evaluation cur = checked_eval(cfg, cd, v, 0);
  path.points.push_back(v);
  path.values.push_back(cur.report.value);

  for (int j = 0; j < cfg.steps; ++j) {
    double prune_above = std::numeric_limits<double>::infinity();
    if (cfg.prune) {
      prune_above = 0.0;
      for (const DiagramPoint* p : select_active(cfg.functional, cur.diagram)) prune_above = std::max(prune_above, p->death);
    }

    // The gradient at v may belong to a region behind the ray; probe inside
    // the segment until the direction agrees with the region it enters.
    Eigen::VectorXd d = admissible_direction(v, cur.report.grad);
    double t_hat = 0.0;
    bool crossing = false;
    bool settled = false;
    for (int probe = 0; probe < kMaxProbes; ++probe) {
      if (d.lpNorm<Eigen::Infinity>() == 0.0) break;
      t_hat = boundary_step(cd, v, d, &crossing, prune_above);
      if (!(t_hat > 0.0) || !std::isfinite(t_hat)) break;
      Eigen::VectorXd mid = v + 0.5 * t_hat * d;
      sanitize(mid);
      const Evaluation ahead = checked_eval(cfg, cd, mid, j + 1);
      Eigen::VectorXd d_ahead = admissible_direction(v, ahead.report.grad);
      if (same_direction(d, d_ahead)) {
        settled = true;
        break;
      }
      d = std::move(d_ahead);
    }
    if (!settled) {
      path.events.push_back({false, false, true});
      path.stopped_early = j + 1 < cfg.steps;
      break;
    }

    Eigen::VectorXd next_v = v + t_hat * d;
    if (!crossing)
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (d(i) < 0.0 && v(i) / -d(i) <= t_hat) next_v(i) = 0.0;
    sanitize(next_v);
    Evaluation next = checked_eval(cfg, cd, next_v, j + 1);
    path.points.push_back(next_v);
    path.values.push_back(next.report.value);
    path.events.push_back({false, crossing, false});
    v = std::move(next_v);
    cur = std::move(next);
  }
  return path;
}

GradientPath ascend(const ComponentDistances& cd, const AscentConfig& cfg) {
  return cfg.mode == AscentMode::ExactPath ? ascend_exact(cd, cfg) : ascend_steps(cd, cfg);
}

}  // namespace topsel
