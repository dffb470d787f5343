#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topsel/optimize.hpp"
#include "topsel/sliding_window.hpp"

namespace topsel {

struct PerturbConfig {
  int trials = 1;
  double sigma = 0.0;  // SD of the i.i.d. noise added to every raw entry
  std::uint64_t master_seed = 0;
  AscentConfig ascent;
  int window = 1;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
};

/// Counter-based seed for trial t, independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial);

/// X + sigma * G with G standard normal, drawn column by column.
TimeSeries perturb_series(const TimeSeries& x, double sigma, std::uint64_t seed);

struct TrialFailure {
  int trial = 0;
  std::string message;
};

struct TrialSummary {
  std::vector<Eigen::VectorXd> mean_path;  // N+1 points
  std::vector<double> mean_values;         // mean f along the path
  Eigen::VectorXd mean_score;
  Eigen::MatrixXd score_covariance;        // denominator trials - 1
  bool covariance_defined = false;         // false with a single successful trial
  Eigen::MatrixXd per_trial_scores;        // successful trials x p, in trial order
  std::vector<int> trial_ids;              // row labels of per_trial_scores
  std::vector<TrialFailure> failures;

  Eigen::VectorXd score_sd() const;
  double covariance_mean_all() const;
  double covariance_mean_diagonal() const;
};

/// Runs every trial (sliding windows then ascent on perturbed data) in
/// parallel and aggregates in trial order, so results do not depend on the
/// schedule. Failed trials are excluded; more than 10% failures is an error.
TrialSummary run_trials(const TimeSeries& x, const PerturbConfig& cfg);

double jaccard(const std::set<int>& a, const std::set<int>& b);

/// 0-based indices j with mean_score_j > threshold.
std::set<int> score_support(const TrialSummary& summary, double threshold);
std::set<int> score_support(const Eigen::VectorXd& scores, double threshold);

/// Median over variables of the SD of first differences.
double estimate_noise_sd(const TimeSeries& x);

/// scores.csv, covariance.csv, mean_path.csv, per_trial_scores.csv
void write_summary(const std::filesystem::path& dir, const TrialSummary& s);
void write_scores_csv(std::ostream& os, const TrialSummary& s);

}  // namespace topsel
