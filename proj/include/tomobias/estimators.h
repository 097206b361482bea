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

#ifndef TOMOBIAS_ESTIMATORS_H_
#define TOMOBIAS_ESTIMATORS_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tomobias/operator.h"
#include "tomobias/scheme.h"

namespace tomobias {

/// LIN: linear inversion. ML: maximum likelihood. LS: least squares.
/// PROJ: linear inversion followed by the nearest-state projection.
enum class Method { kLin, kMl, kLs, kProj };

std::string_view method_name(Method m);
/// Accepts "LIN", "ML", "LS", "PROJ" (case-insensitive).
Method parse_method(std::string_view name);

struct SolverOptions {
  int max_iterations = 20000;
  /// The ascent stops once the certificate bounds the remaining relative
  /// gain of the target below this.
  double target_tol = 1e-10;
  /// Bound on lambda_max(G) - tr(rho G), G the target gradient.
  double cert_tol = 1e-6;
  /// Floor on probabilities inside logarithms and LS denominators.
  double prob_floor = 1e-12;
  /// Total number of starts for LS (the maximally mixed state plus random
  /// interior states); the best target wins.
  int ls_restarts = 1;
  std::uint64_t restart_seed = 0x5EEDull;
  /// Starting point instead of the maximally mixed state; must be a state.
  std::optional<CMatrix> initial;
  bool record_history = false;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

struct ReconstructionResult {
  HermitianOperator estimate;
  Method method = Method::kLin;
  int iterations = 0;
  double target_value = 0.0;
  double certificate_residual = 0.0;
  bool converged = true;
  /// Spread of final targets across LS starts (0 with a single start).
  double restart_spread = 0.0;
  /// Target after every accepted step when SolverOptions::record_history.
  std::vector<double> history;

  bool is_physical() const { return QuantumState::IsPhysical(estimate); }
  /// The estimate as a state; throws for an unphysical LIN estimate.
  QuantumState state() const;
};

/// Euclidean projection onto {x >= 0, sum x = 1}.
RVector project_to_simplex(const RVector& v);

/// Nearest (Frobenius) density matrix: eigenvalues projected onto the
/// probability simplex.
QuantumState project_to_physical(const HermitianOperator& h);
CMatrix project_to_physical_matrix(const CMatrix& h);

/// T_ML = sum_nu f_nu log max(P_nu, floor).
double ml_target(const CMatrix& rho, const FrequencyData& data,
                 const TomographyScheme& scheme, double prob_floor = 1e-12);
/// T_LS = -sum_nu (f_nu - P_nu)^2 / max(P_nu, floor).
double ls_target(const CMatrix& rho, const FrequencyData& data,
                 const TomographyScheme& scheme, double prob_floor = 1e-12);

/// Maximum likelihood over density matrices by projected-gradient ascent with
/// alternating Barzilai-Borwein steps and backtracking. The certificate residual
/// is lambda_max(R) - 3^n with R = sum_nu (f_nu / P_nu) M_nu.
ReconstructionResult ml_reconstruct(const FrequencyData& data, const TomographyScheme& scheme,
                                    const SolverOptions& options = {});

/// Least squares with the state-dependent denominator, same ascent. The
/// certificate residual is lambda_max(G) - tr(rho G).
ReconstructionResult ls_reconstruct(const FrequencyData& data, const TomographyScheme& scheme,
                                    const SolverOptions& options = {});

ReconstructionResult lin_reconstruct(const FrequencyData& data, const TomographyScheme& scheme);

ReconstructionResult reconstruct(Method method, const FrequencyData& data,
                                 const TomographyScheme& scheme,
                                 const SolverOptions& options = {});

}  // namespace tomobias

#endif  // TOMOBIAS_ESTIMATORS_H_
