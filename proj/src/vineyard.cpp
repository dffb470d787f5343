#include "topsel/vineyard.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "topsel/error.hpp"
#include "topsel/io.hpp"
#include "topsel/rips.hpp"

namespace topsel {

namespace {

void check_breakpoints(const std::vector<double>& b, std::size_t values) {
  if (b.size() < 2) fail(ErrorCode::InvalidArgument, "a curve needs at least two breakpoints");
  if (b.size() != values) fail(ErrorCode::InvalidArgument, "one value per breakpoint expected");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i])) fail(ErrorCode::InvalidArgument, "breakpoints must be finite");
    if (i && !(b[i] > b[i - 1])) fail(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
  }
}

struct PairKey {
  Simplex birth;
  Simplex death;
  Entry birth_entry;
  Entry death_entry;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct Snapshot {
  double t = 0.0;
  std::vector<DiagramPoint> points;  // sorted by (birth simplex, death simplex)
  std::vector<PairKey> key;          // same order as points
};

class Sampler {
 public:
  Sampler(const PLCurve& curve, int k) : curve_(curve), degree_{k} {}

  Snapshot at(double t) const {
    GradedDiagram d;
    bool entries = false;
    if (curve_.is_matrix_curve()) {
      d = rips_diagram(curve_.matrix_at(t), degree_, /*validate=*/false);
      entries = true;
    } else {
      d = compute_diagram(*curve_.skeleton(), curve_.weight_at(t), degree_);
    }
    Snapshot s;
    s.t = t;
    s.points = std::move(d.points);
    auto key_of = [&](const DiagramPoint& p) {
      const Provenance& pr = *p.provenance;
      return entries ? PairKey{pr.birth, pr.death, pr.birth_entry, pr.death_entry}
                     : PairKey{pr.birth, pr.death, Entry{}, Entry{}};
    };
    std::sort(s.points.begin(), s.points.end(), [&](const DiagramPoint& a, const DiagramPoint& b) {
      return key_of(a) < key_of(b);
    });
    s.key.reserve(s.points.size());
    for (const auto& p : s.points) s.key.push_back(key_of(p));
    return s;
  }

 private:
  const PLCurve& curve_;
  int degree_[1];
};

double distance_inf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Maps each point of `next` to an index of `prev`: identical simplex pairs
// first, then greedy nearest endpoints.
std::vector<std::size_t> stitch(const Snapshot& prev, const Snapshot& next, double& error) {
  const std::size_t n = next.points.size();
  std::vector<std::size_t> to_prev(n, SIZE_MAX);
  std::vector<char> used(prev.points.size(), 0);
  std::map<std::pair<Simplex, Simplex>, std::size_t> by_pair;
  for (std::size_t i = 0; i < prev.points.size(); ++i) by_pair.emplace(std::make_pair(prev.key[i].birth, prev.key[i].death), i);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = by_pair.find({next.key[i].birth, next.key[i].death});
    if (it != by_pair.end() && !used[it->second]) {
      to_prev[i] = it->second;
      used[it->second] = 1;
    }
  }
  std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
  for (std::size_t i = 0; i < n; ++i) {
    if (to_prev[i] != SIZE_MAX) continue;
    for (std::size_t j = 0; j < prev.points.size(); ++j)
      if (!used[j]) cand.emplace_back(distance_inf(next.points[i], prev.points[j]), i, j);
  }
  std::sort(cand.begin(), cand.end());
  for (const auto& [dist, i, j] : cand) {
    if (to_prev[i] != SIZE_MAX || used[j]) continue;
    to_prev[i] = j;
    used[j] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (to_prev[i] == SIZE_MAX) fail(ErrorCode::Numeric, "vine count changed along the curve");
    error = std::max(error, distance_inf(next.points[i], prev.points[to_prev[i]]));
  }
  return to_prev;
}

class Builder {
 public:
  explicit Builder(int degree) { out_.degree = degree; }

  void start(const Snapshot& s) {
    vine_of_.resize(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      vine_of_[i] = out_.vines.size();
      out_.vines.emplace_back();
    }
    push(s);
  }

  /// Append a snapshot from the same linear piece as the last one.
  void extend(const Snapshot& s) { push(s); }

  /// Append a snapshot on the far side of a region change.
  void cross(const Snapshot& prev, const Snapshot& s) {
    const auto to_prev = stitch(prev, s, out_.stitch_error);
    std::vector<std::size_t> next(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) next[i] = vine_of_[to_prev[i]];
    vine_of_ = std::move(next);
    ++region_;
    push(s);
  }

  void new_region() { ++region_; }

  Vineyard finish() {
    out_.regions = region_ + 1;
    return std::move(out_);
  }

  Vineyard& out() { return out_; }

 private:
  void push(const Snapshot& s) {
    for (std::size_t i = 0; i < s.points.size(); ++i)
      out_.vines[vine_of_[i]].points.push_back({s.t, s.points[i].birth, s.points[i].death, region_});
  }

  Vineyard out_;
  std::vector<std::size_t> vine_of_;
  int region_ = 0;
};

}  // namespace

PLCurve PLCurve::of_weights(Skeleton skeleton, std::vector<double> breakpoints, std::vector<Weight> values) {
  check_breakpoints(breakpoints, values.size());
  for (const Weight& w : values) {
    if (w.size() != skeleton.size()) fail(ErrorCode::InvalidWeight, "weight size does not match the skeleton");
    if (!is_monotone(w, skeleton)) fail(ErrorCode::InvalidWeight, "curve weights must be monotone");
  }
  PLCurve c;
  c.breakpoints_ = std::move(breakpoints);
  c.skeleton_ = std::make_shared<const Skeleton>(std::move(skeleton));
  c.weights_ = std::move(values);
  for (Weight& w : c.weights_) w.argmax.clear();
  return c;
}

PLCurve PLCurve::of_matrices(std::vector<double> breakpoints, std::vector<Eigen::MatrixXd> values) {
  check_breakpoints(breakpoints, values.size());
  for (const auto& M : values) {
    validate_filtration_matrix(M);
    if (M.rows() != values.front().rows()) fail(ErrorCode::InvalidMatrix, "curve matrices differ in size");
  }
  PLCurve c;
  c.breakpoints_ = std::move(breakpoints);
  c.matrices_ = std::move(values);
  return c;
}

int PLCurve::vertices() const noexcept {
  return is_matrix_curve() ? static_cast<int>(matrices_.front().rows()) : skeleton_->vertex_count();
}

std::pair<std::size_t, double> PLCurve::locate(double t) const {
  if (!(t >= breakpoints_.front() && t <= breakpoints_.back()))
    fail(ErrorCode::InvalidArgument, "curve parameter outside its domain");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t seg = static_cast<std::size_t>(it - breakpoints_.begin());
  seg = std::min(seg == 0 ? 0 : seg - 1, segments() - 1);
  const double a = breakpoints_[seg];
  const double b = breakpoints_[seg + 1];
  return {seg, (t - a) / (b - a)};
}

Weight PLCurve::weight_at(double t) const {
  if (is_matrix_curve()) fail(ErrorCode::InvalidArgument, "not a weight curve");
  const auto [seg, s] = locate(t);
  const auto& a = weights_[seg].values;
  const auto& b = weights_[seg + 1].values;
  Weight w;
  w.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w.values[i] = s == 0.0 ? a[i] : s == 1.0 ? b[i] : (1.0 - s) * a[i] + s * b[i];
  return w;
}

Eigen::MatrixXd PLCurve::matrix_at(double t) const {
  if (!is_matrix_curve()) fail(ErrorCode::InvalidArgument, "not a matrix curve");
  const auto [seg, s] = locate(t);
  if (s == 0.0) return matrices_[seg];
  if (s == 1.0) return matrices_[seg + 1];
  return (1.0 - s) * matrices_[seg] + s * matrices_[seg + 1];
}

Vineyard trace_vineyard(const PLCurve& curve, int k, int resolution, double bisection_tol) {
  if (resolution < 2) fail(ErrorCode::InvalidResolution, "resolution must be at least 2");
  if (k < -1 || k > curve.vertices() - 1)
    fail(ErrorCode::InvalidDegree, "degree " + std::to_string(k) + " out of range");
  if (!(bisection_tol > 0.0)) fail(ErrorCode::InvalidArgument, "bisection tolerance must be positive");

  const Sampler sampler(curve, k);
  Builder b(k);
  const auto& bp = curve.breakpoints();

  Snapshot last = sampler.at(bp.front());
  b.start(last);
  b.out().sample_times.push_back(last.t);
  b.out().sample_counts.push_back(last.points.size());

  for (std::size_t seg = 0; seg + 1 < bp.size(); ++seg) {
    if (seg > 0) {
      // Curve breakpoints end a linear piece even when the matching survives.
      b.new_region();
      b.extend(last);
    }
    const double t0 = bp[seg];
    const double t1 = bp[seg + 1];
    for (int i = 1; i < resolution; ++i) {
      const double t = i + 1 == resolution ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / (resolution - 1);
      Snapshot target = sampler.at(t);
      while (target.key != last.key) {
        Snapshot lo = last;
        Snapshot hi = target;
        while (hi.t - lo.t > bisection_tol * std::max(1.0, std::abs(hi.t))) {
          const double mid = 0.5 * (lo.t + hi.t);
          if (mid <= lo.t || mid >= hi.t) break;
          Snapshot sm = sampler.at(mid);
          (sm.key == lo.key ? lo : hi) = std::move(sm);
        }
        if (lo.t != last.t) b.extend(lo);
        b.cross(lo, hi);
        b.out().crossings.push_back(0.5 * (lo.t + hi.t));
        last = std::move(hi);
        if (last.t == target.t) break;
      }
      if (last.t != target.t) b.extend(target);
      last = std::move(target);
      b.out().sample_times.push_back(t);
      b.out().sample_counts.push_back(last.points.size());
    }
  }
  return b.finish();
}

double Vineyard::max_chord_deviation() const {
  double worst = 0.0;
  for (const Vine& v : vines) {
    std::size_t i = 0;
    while (i < v.points.size()) {
      std::size_t j = i;
      while (j + 1 < v.points.size() && v.points[j + 1].region == v.points[i].region) ++j;
      const VinePoint& a = v.points[i];
      const VinePoint& z = v.points[j];
      if (z.t > a.t) {
        for (std::size_t q = i + 1; q < j; ++q) {
          const VinePoint& p = v.points[q];
          const double s = (p.t - a.t) / (z.t - a.t);
          worst = std::max(worst, std::abs(p.birth - ((1 - s) * a.birth + s * z.birth)));
          worst = std::max(worst, std::abs(p.death - ((1 - s) * a.death + s * z.death)));
        }
      }
      i = j + 1;
    }
  }
  return worst;
}

RegionSignature region_signature(const Weight& w, const BaseOrder& base, const Skeleton& skeleton) {
  return {refine_preorder(w, base, skeleton).sequence};
}

void write_vineyard_json(std::ostream& os, const Vineyard& v) {
  nlohmann::ordered_json j;
  j["degree"] = v.degree;
  j["crossings"] = v.crossings;
  j["stitch_error"] = v.stitch_error;
  auto& vines = j["vines"] = nlohmann::ordered_json::array();
  for (const Vine& vine : v.vines) {
    auto arr = nlohmann::ordered_json::array();
    for (const VinePoint& p : vine.points) arr.push_back({p.t, p.birth, p.death});
    vines.push_back(std::move(arr));
  }
  os << j.dump(1) << '\n';
}

void write_vineyard_csv(std::ostream& os, const Vineyard& v) {
  os << "vine,t,birth,death,region\n";
  for (std::size_t i = 0; i < v.vines.size(); ++i)
    for (const VinePoint& p : v.vines[i].points)
      os << i << ',' << format_double(p.t) << ',' << format_double(p.birth) << ',' << format_double(p.death) << ','
         << p.region << '\n';
}

}  // namespace topsel
