// Copyright 2026 The tomobias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOMOBIAS_SAMPLING_H_
#define TOMOBIAS_SAMPLING_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "tomobias/operator.h"
#include "tomobias/scheme.h"

namespace tomobias {

struct SeedPolicy {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
  std::string label;
};

/// SplitMix64 stream (Steele, Lea & Flood 2014): state advances by the
/// golden-ratio increment and each output is the state passed through the
/// MurmurHash3-style 64-bit finalizer. Uses only integer arithmetic, so the
/// sequence is identical on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t state) : state_(state) {}

  std::uint64_t state() const { return state_; }
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

 private:
  std::uint64_t state_;
};

/// Bijective 64-bit finalizer used by SplitMix64.
std::uint64_t mix64(std::uint64_t z);
/// FNV-1a hash of a stream label.
std::uint64_t label_hash(std::string_view label);

/// Stream state for (master_seed, trial_index, label):
///   key   = mix64(master_seed ^ mix64(label_hash(label)))
///   state = key ^ mix64(trial_index + 0x9E3779B97F4A7C15)
/// For a fixed (master_seed, label) the map trial_index -> state is a
/// bijection because mix64 is.
RandomStream derive_trial_seed(const SeedPolicy& policy);

/// Exact Binomial(trials, p) draw. Small means use sequential inversion;
/// larger means split the trials into halves (sum of independent binomials).
std::int64_t sample_binomial(std::int64_t trials, double p, RandomStream& rng);

/// Multinomial draw by sequential conditional binomials.
void sample_multinomial(std::span<const double> probs, std::int64_t trials,
                        RandomStream& rng, std::span<std::int64_t> counts);

/// One multinomial draw of N_s events per setting. probs is flattened in nu
/// order with outcomes_per_setting entries per setting; each block must be a
/// probability vector within 1e-9.
FrequencyData toss_frequencies(const RVector& probs, int num_settings,
                               std::int64_t events_per_setting, RandomStream& rng);
FrequencyData toss_frequencies(const RVector& probs, int num_settings,
                               std::int64_t events_per_setting, const SeedPolicy& seed);

}  // namespace tomobias

#endif  // TOMOBIAS_SAMPLING_H_
