#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "topsel/sliding_window.hpp"

namespace topsel {

/// f_i(t) = sin(2 pi / period * (t - K_i)) for t = 1..length, K_i uniform on
/// [0, period). Selected signals have their values shuffled, then every
/// signal gets Gaussian noise.
struct SinesSpec {
  int signals = 3;
  int length = 300;
  double period = 50.0;
  std::vector<double> noise_sd{0.0};  // one value for all signals or one per signal
  std::vector<int> permuted;          // 0-based signal indices
  std::uint64_t seed = 0;

  void validate() const;
  double noise_of(int i) const { return noise_sd.size() == 1 ? noise_sd[0] : noise_sd[static_cast<std::size_t>(i)]; }
};

struct GeneratedSeries {
  SinesSpec spec;
  TimeSeries data;
  std::vector<double> phases;
  /// permutations[i] maps output row r to source row; identity when unpermuted.
  std::vector<std::vector<int>> permutations;
};

GeneratedSeries generate_sines(const SinesSpec& spec);

/// The last `permuted` of `signals` sines are shuffled; all share one noise SD.
SinesSpec sines_permuted(int signals, int permuted, double noise_sd, std::uint64_t seed);

/// JSON manifest with the generator settings, seed, phases and permutations.
void write_manifest(std::ostream& os, const GeneratedSeries& g);

/// Regenerates the series from a manifest; bit-identical to the original.
GeneratedSeries replay_manifest(std::istream& is);

}  // namespace topsel
