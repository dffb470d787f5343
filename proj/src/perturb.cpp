#include "topsel/perturb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <thread>

#include "topsel/error.hpp"
#include "topsel/io.hpp"

namespace topsel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct TrialResult {
  std::optional<GradientPath> path;
  std::string error;
};

}  // namespace

void PerturbConfig::validate() const {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trial count must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) fail(ErrorCode::InvalidArgument, "perturbation SD must be finite and nonnegative");
  if (threads < 0) fail(ErrorCode::InvalidArgument, "thread count must be nonnegative");
  ascent.validate();
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial) {
  return splitmix64(master_seed + static_cast<std::uint64_t>(trial + 1) * 0x9E3779B97F4A7C15ULL);
}

TimeSeries perturb_series(const TimeSeries& x, double sigma, std::uint64_t seed) {
  if (sigma == 0.0) return x;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd y = x.data();
  for (Eigen::Index c = 0; c < y.cols(); ++c)
    for (Eigen::Index r = 0; r < y.rows(); ++r) y(r, c) += sigma * g(rng);
  return TimeSeries(std::move(y));
}

Eigen::VectorXd TrialSummary::score_sd() const { return score_covariance.diagonal().cwiseMax(0.0).cwiseSqrt(); }

double TrialSummary::covariance_mean_all() const { return score_covariance.mean(); }

double TrialSummary::covariance_mean_diagonal() const { return score_covariance.diagonal().mean(); }

TrialSummary run_trials(const TimeSeries& x, const PerturbConfig& cfg) {
  cfg.validate();
  detail::check_window(x, cfg.window);

  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t; (t = next.fetch_add(1)) < cfg.trials;) {
      TrialResult& r = results[static_cast<std::size_t>(t)];
      try {
        const TimeSeries xt = perturb_series(x, cfg.sigma, trial_seed(cfg.master_seed, t));
        r.path = ascend(sliding_window_distances(xt, cfg.window), cfg.ascent);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  int nthreads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = std::min(nthreads, cfg.trials);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }

  TrialSummary s;
  std::vector<const GradientPath*> ok;
  for (int t = 0; t < cfg.trials; ++t) {
    const TrialResult& r = results[static_cast<std::size_t>(t)];
    if (r.path) {
      ok.push_back(&*r.path);
      s.trial_ids.push_back(t);
    } else {
      s.failures.push_back({t, r.error});
    }
  }
  if (ok.empty() || s.failures.size() * 10 > static_cast<std::size_t>(cfg.trials)) {
    std::string msg = std::to_string(s.failures.size()) + " of " + std::to_string(cfg.trials) + " trials failed";
    if (!s.failures.empty()) msg += " (first: trial " + std::to_string(s.failures.front().trial) + ": " + s.failures.front().message + ")";
    fail(ErrorCode::TrialFailures, msg);
  }

  const Eigen::Index p = ok.front()->points.front().size();
  const std::size_t len = static_cast<std::size_t>(cfg.ascent.steps) + 1;
  const double inv = 1.0 / static_cast<double>(ok.size());
  s.mean_path.assign(len, Eigen::VectorXd::Zero(p));
  s.mean_values.assign(len, 0.0);
  s.per_trial_scores.resize(static_cast<Eigen::Index>(ok.size()), p);
  // Paths that stop early hold their final point for the remaining steps.
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const GradientPath& path = *ok[i];
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t src = std::min(j, path.points.size() - 1);
      s.mean_path[j] += path.points[src];
      s.mean_values[j] += path.values[src];
    }
    s.per_trial_scores.row(static_cast<Eigen::Index>(i)) = path.score().transpose();
  }
  for (std::size_t j = 0; j < len; ++j) {
    s.mean_path[j] *= inv;
    s.mean_values[j] *= inv;
  }
  s.mean_score = s.mean_path.back();

  s.score_covariance = Eigen::MatrixXd::Zero(p, p);
  s.covariance_defined = ok.size() > 1;
  if (s.covariance_defined) {
    const Eigen::MatrixXd centered = s.per_trial_scores.rowwise() - s.mean_score.transpose();
    s.score_covariance = (centered.transpose() * centered) / static_cast<double>(ok.size() - 1);
    s.score_covariance = 0.5 * (s.score_covariance + s.score_covariance.transpose()).eval();
  }
  return s;
}

double jaccard(const std::set<int>& a, const std::set<int>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (int x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::set<int> score_support(const Eigen::VectorXd& scores, double threshold) {
  if (!(threshold >= 0.0)) fail(ErrorCode::InvalidArgument, "support threshold must be nonnegative");
  std::set<int> out;
  for (Eigen::Index j = 0; j < scores.size(); ++j)
    if (scores(j) > threshold) out.insert(static_cast<int>(j));
  return out;
}

std::set<int> score_support(const TrialSummary& summary, double threshold) {
  return score_support(summary.mean_score, threshold);
}

double estimate_noise_sd(const TimeSeries& x) {
  if (x.length() < 3) fail(ErrorCode::InvalidArgument, "need at least three time points to estimate noise");
  std::vector<double> sds;
  for (Eigen::Index j = 0; j < x.variables(); ++j) {
    const Eigen::VectorXd col = x.data().col(j);
    const Eigen::VectorXd diff = col.tail(col.size() - 1) - col.head(col.size() - 1);
    const double mean = diff.mean();
    sds.push_back(std::sqrt((diff.array() - mean).square().sum() / static_cast<double>(diff.size() - 1)));
  }
  std::sort(sds.begin(), sds.end());
  const std::size_t n = sds.size();
  return n % 2 ? sds[n / 2] : 0.5 * (sds[n / 2 - 1] + sds[n / 2]);
}

void write_scores_csv(std::ostream& os, const TrialSummary& s) {
  os << "variable,mean,sd\n";
  const Eigen::VectorXd sd = s.score_sd();
  for (Eigen::Index j = 0; j < s.mean_score.size(); ++j)
    os << j + 1 << ',' << format_double(s.mean_score(j)) << ',' << format_double(sd(j)) << '\n';
}

void write_summary(const std::filesystem::path& dir, const TrialSummary& s) {
  const Eigen::Index p = s.mean_score.size();
  std::vector<std::string> vars;
  for (Eigen::Index j = 0; j < p; ++j) vars.push_back("v_" + std::to_string(j + 1));
  {
    auto out = open_output(dir / "scores.csv");
    write_scores_csv(out, s);
  }
  {
    auto out = open_output(dir / "covariance.csv");
    write_matrix_csv(out, s.score_covariance, vars);
  }
  {
    auto out = open_output(dir / "mean_path.csv");
    out << "step,f_value";
    for (const auto& v : vars) out << ',' << v;
    out << '\n';
    for (std::size_t j = 0; j < s.mean_path.size(); ++j) {
      out << j << ',' << format_double(s.mean_values[j]);
      for (Eigen::Index i = 0; i < p; ++i) out << ',' << format_double(s.mean_path[j](i));
      out << '\n';
    }
  }
  {
    auto out = open_output(dir / "per_trial_scores.csv");
    out << "trial";
    for (const auto& v : vars) out << ',' << v;
    out << '\n';
    for (Eigen::Index r = 0; r < s.per_trial_scores.rows(); ++r) {
      out << s.trial_ids[static_cast<std::size_t>(r)];
      for (Eigen::Index i = 0; i < p; ++i) out << ',' << format_double(s.per_trial_scores(r, i));
      out << '\n';
    }
  }
}

}  // namespace topsel
