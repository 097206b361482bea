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

#ifndef TOMOBIAS_WITNESS_H_
#define TOMOBIAS_WITNESS_H_

#include <cstdint>
#include <span>

#include "tomobias/functionals.h"
#include "tomobias/operator.h"
#include "tomobias/scheme.h"

namespace tomobias {

/// Which side of g the linear functional tr(rho L) sits on.
enum class BoundDirection { kLower, kUpper, kExact };

/// Expansion L = sum_nu l_nu M_nu over the scheme's outcome projectors.
struct FrameCoefficients {
  RVector coefficients;  // l_nu = tr(A_nu L)
  /// h^2 = sum_s (max_r l_r^s - min_r l_r^s)^2.
  double h_squared = 0.0;
};

/// Linearization L of a functional at an anchor state, expanded in the
/// scheme so that tr(rho_LIN L) is a fixed linear combination of frequencies.
struct WitnessOperator {
  HermitianOperator op;
  RVector coefficients;
  double h_squared = 0.0;
  QuantumState anchor;
  BoundDirection direction = BoundDirection::kLower;
  /// Set when the construction degenerated (e.g. the anchor's partial
  /// transpose has no negative eigenvalue, giving L = 0).
  bool trivial = false;

  double value(const HermitianOperator& rho) const { return rho.inner(op); }
};

/// l_nu = tr(A_nu L) and h^2. Throws InternalConsistencyError if
/// sum_nu l_nu M_nu misses L by more than 1e-8.
FrameCoefficients frame_coefficients(const HermitianOperator& l, const TomographyScheme& scheme);

/// Recomputes h^2 from coefficients laid out per setting.
double span_squared(const RVector& coefficients, int num_settings);

/// Tangent-plane witness L = l0 1 + sum_i l_i S_i with l_i = dg/dx_i and
/// l0 = g - sum_i x'_i l_i at the anchor. Convex g gives a lower bound,
/// concave g an upper bound; a pure-state fidelity returns its projector.
/// Negativity is dispatched to negativity_witness. Entropy and QFI need a
/// full-rank anchor (DegenerateGuessError otherwise).
WitnessOperator linearize(const FunctionalSpec& spec, const QuantumState& guess,
                          const TomographyScheme& scheme);

/// L = -Q^{T_A}, Q the projector onto the strictly negative eigenspace of
/// guess^{T_A}; then tr(guess L) = N(guess) and tr(rho L) <= N(rho).
WitnessOperator negativity_witness(const QuantumState& guess, std::span<const int> party_a,
                                   const TomographyScheme& scheme);

/// Wraps a fixed operator (bound direction kExact).
WitnessOperator witness_from_operator(const HermitianOperator& l, const QuantumState& anchor,
                                      const TomographyScheme& scheme);

/// (1 - eps) guess + eps 1/2^n.
QuantumState regularize_anchor(const QuantumState& guess, double eps = 1e-6);

/// sqrt(h^2 |log(1 - gamma)| / (2 N_s)); gamma in [0, 1).
double hoeffding_penalty(double h_squared, double gamma, std::int64_t events_per_setting);

/// One-sided level-gamma lower confidence bound tr(rho_LIN L) - penalty.
double hoeffding_bound(const HermitianOperator& rho_lin, const WitnessOperator& witness,
                       double gamma, std::int64_t events_per_setting);
/// Mirror image for upper-bound (concave) witnesses: tr(rho_LIN L) + penalty.
double hoeffding_upper_bound(const HermitianOperator& rho_lin, const WitnessOperator& witness,
                             double gamma, std::int64_t events_per_setting);

}  // namespace tomobias

#endif  // TOMOBIAS_WITNESS_H_
