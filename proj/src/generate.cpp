#include "topsel/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

#include "topsel/error.hpp"

namespace topsel {

void SinesSpec::validate() const {
  if (signals < 1) fail(ErrorCode::InvalidArgument, "need at least one signal");
  if (length < 1) fail(ErrorCode::InvalidArgument, "series length must be positive");
  if (!(period > 0.0) || !std::isfinite(period)) fail(ErrorCode::InvalidArgument, "period must be positive");
  if (noise_sd.size() != 1 && noise_sd.size() != static_cast<std::size_t>(signals))
    fail(ErrorCode::InvalidArgument, "expected one noise SD or one per signal");
  for (double s : noise_sd)
    if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorCode::InvalidArgument, "noise SDs must be finite and nonnegative");
  std::vector<int> seen = permuted;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(ErrorCode::InvalidArgument, "permuted signal listed twice");
  for (int i : seen)
    if (i < 0 || i >= signals) fail(ErrorCode::InvalidArgument, "permuted signal index out of range");
}

GeneratedSeries generate_sines(const SinesSpec& spec) {
  spec.validate();
  const int p = spec.signals;
  const int n = spec.length;
  std::mt19937_64 rng(spec.seed);

  GeneratedSeries g;
  g.spec = spec;
  std::uniform_real_distribution<double> phase(0.0, spec.period);
  for (int i = 0; i < p; ++i) g.phases.push_back(phase(rng));

  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < p; ++i)
    for (int t = 1; t <= n; ++t)
      x(t - 1, i) = std::sin(2.0 * std::numbers::pi / spec.period * (t - g.phases[static_cast<std::size_t>(i)]));

  g.permutations.assign(static_cast<std::size_t>(p), {});
  for (int i = 0; i < p; ++i) {
    auto& perm = g.permutations[static_cast<std::size_t>(i)];
    perm.resize(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
  }
  for (int i : spec.permuted) {
    auto& perm = g.permutations[static_cast<std::size_t>(i)];
    // Fisher-Yates with explicit draws keeps the output independent of the
    // standard library's shuffle.
    for (int r = n - 1; r > 0; --r) {
      const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(r + 1));
      std::swap(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd col = x.col(i);
    for (int r = 0; r < n; ++r) x(r, i) = col(perm[static_cast<std::size_t>(r)]);
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  for (int i = 0; i < p; ++i) {
    const double sd = spec.noise_of(i);
    for (int r = 0; r < n; ++r) {
      const double z = noise(rng);
      if (sd > 0.0) x(r, i) += sd * z;
    }
  }
  g.data = TimeSeries(std::move(x));
  return g;
}

SinesSpec sines_permuted(int signals, int permuted, double noise_sd, std::uint64_t seed) {
  if (permuted < 0 || permuted > signals) fail(ErrorCode::InvalidArgument, "cannot permute more signals than exist");
  SinesSpec s;
  s.signals = signals;
  s.noise_sd = {noise_sd};
  s.seed = seed;
  for (int i = signals - permuted; i < signals; ++i) s.permuted.push_back(i);
  return s;
}

void write_manifest(std::ostream& os, const GeneratedSeries& g) {
  nlohmann::ordered_json j;
  j["generator"] = "sines";
  j["seed"] = g.spec.seed;
  j["signals"] = g.spec.signals;
  j["length"] = g.spec.length;
  j["period"] = g.spec.period;
  j["noise_sd"] = g.spec.noise_sd;
  j["permuted"] = g.spec.permuted;
  j["phases"] = g.phases;
  auto& perms = j["permutations"] = nlohmann::ordered_json::object();
  for (int i : g.spec.permuted) perms[std::to_string(i)] = g.permutations[static_cast<std::size_t>(i)];
  os << j.dump(1) << '\n';
}

GeneratedSeries replay_manifest(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
    SinesSpec s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.signals = j.at("signals").get<int>();
    s.length = j.at("length").get<int>();
    s.period = j.at("period").get<double>();
    s.noise_sd = j.at("noise_sd").get<std::vector<double>>();
    s.permuted = j.at("permuted").get<std::vector<int>>();
    return generate_sines(s);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad manifest: ") + e.what());
  }
}

}  // namespace topsel
