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

#include "tomobias/sampling.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tomobias {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
// Mean above which a binomial draw is split in two.
constexpr double kSplitMean = 64.0;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t RandomStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RandomStream derive_trial_seed(const SeedPolicy& policy) {
  const std::uint64_t key = mix64(policy.master_seed ^ mix64(label_hash(policy.label)));
  return RandomStream(key ^ mix64(policy.trial_index + kGolden));
}

std::int64_t sample_binomial(std::int64_t trials, double p, RandomStream& rng) {
  if (trials < 0) throw std::invalid_argument("binomial trial count must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial p outside [0, 1]");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - sample_binomial(trials, 1.0 - p, rng);
  if (static_cast<double>(trials) * p > kSplitMean) {
    const std::int64_t half = trials / 2;
    return sample_binomial(half, p, rng) + sample_binomial(trials - half, p, rng);
  }
  // Inversion: walk the pmf from k = 0. With mean <= 64 and p <= 1/2 the
  // starting mass q^n stays far above the denormal range.
  const double q = 1.0 - p;
  const double ratio = p / q;
  double pmf = std::pow(q, static_cast<double>(trials));
  double u = rng.next_double();
  std::int64_t k = 0;
  while (u >= pmf) {
    u -= pmf;
    if (k == trials) return trials;  // rounding left a sliver of mass
    pmf *= ratio * static_cast<double>(trials - k) / static_cast<double>(k + 1);
    ++k;
    if (pmf == 0.0) return k;
  }
  return k;
}

void sample_multinomial(std::span<const double> probs, std::int64_t trials,
                        RandomStream& rng, std::span<std::int64_t> counts) {
  if (counts.size() != probs.size() || probs.empty()) {
    throw std::invalid_argument("multinomial size mismatch");
  }
  std::int64_t remaining = trials;
  double mass = 1.0;
  const std::size_t last = probs.size() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    if (remaining == 0 || mass <= 0.0) {
      counts[i] = 0;
      continue;
    }
    const double cond = std::clamp(probs[i] / mass, 0.0, 1.0);
    counts[i] = sample_binomial(remaining, cond, rng);
    remaining -= counts[i];
    mass -= probs[i];
  }
  counts[last] = remaining;
}

FrequencyData toss_frequencies(const RVector& probs, int num_settings,
                               std::int64_t events_per_setting, RandomStream& rng) {
  if (num_settings <= 0 || probs.size() % num_settings != 0 || probs.size() == 0) {
    throw std::invalid_argument("probability vector does not split over the settings");
  }
  if (events_per_setting < 1) throw std::invalid_argument("N_s must be >= 1");
  const auto per = static_cast<std::size_t>(probs.size() / num_settings);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(probs.size()));
  for (int s = 0; s < num_settings; ++s) {
    std::span<const double> block(probs.data() + s * per, per);
    double total = 0.0;
    for (double p : block) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability outside [0, 1] in setting " +
                                    std::to_string(s));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("probabilities of setting " + std::to_string(s) +
                                  " do not sum to 1");
    }
    sample_multinomial(block, events_per_setting, rng,
                       std::span<std::int64_t>(counts.data() + s * per, per));
  }
  return FrequencyData::FromCounts(std::move(counts), num_settings, events_per_setting);
}

FrequencyData toss_frequencies(const RVector& probs, int num_settings,
                               std::int64_t events_per_setting, const SeedPolicy& seed) {
  RandomStream rng = derive_trial_seed(seed);
  return toss_frequencies(probs, num_settings, events_per_setting, rng);
}

}  // namespace tomobias
