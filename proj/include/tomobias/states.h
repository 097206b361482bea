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

#ifndef TOMOBIAS_STATES_H_
#define TOMOBIAS_STATES_H_

#include <optional>
#include <string>
#include <string_view>

#include "tomobias/operator.h"

namespace tomobias {

enum class StateFamily { kGhz, kW, kProductSep, kSmolin };

std::string_view family_name(StateFamily family);

/// Benchmark state: a family target mixed with white noise so that the
/// fidelity with the noiseless target equals target_fidelity.
struct StateSpec {
  StateFamily family = StateFamily::kGhz;
  int n_qubits = 4;
  double target_fidelity = 1.0;

  /// Weight p of the noiseless target in p*target + (1-p)*1/2^n.
  double noise_weight() const;
  std::string to_string() const;
};

/// Parses "ghz:4@F=0.8", "w:4@F=0.8", "sep:4@F=0.8", "smolin@F=0.8".
/// The "@F=..." suffix is optional and defaults to 1.
StateSpec parse_state_spec(std::string_view text);

/// Pure target vector; empty for the (mixed) Smolin family.
std::optional<CVector> target_vector(StateFamily family, int n_qubits);

CVector ghz_vector(int n_qubits);
CVector w_vector(int n_qubits);
/// Normalized (|0> + |+>)^{(x) n}.
CVector product_sep_vector(int n_qubits);
/// 1/4 sum_i |B_i><B_i| (x) |B_i><B_i| over the four Bell states, pairs
/// (0,1) and (2,3).
QuantumState smolin_state();

/// Noiseless target state of the family.
QuantumState target_state(StateFamily family, int n_qubits);

/// p*target + (1-p)*1/2^n with p from StateSpec::noise_weight().
QuantumState make_state(const StateSpec& spec);

}  // namespace tomobias

#endif  // TOMOBIAS_STATES_H_
