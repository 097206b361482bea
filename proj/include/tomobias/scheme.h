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

#ifndef TOMOBIAS_SCHEME_H_
#define TOMOBIAS_SCHEME_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "tomobias/operator.h"

namespace tomobias {

class IllPosedSchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// One local-Pauli measurement setting, e.g. "XZY".
struct Setting {
  std::string bases;
  int index = 0;  // 0-based position in the canonical order
};

struct SchemeOptions {
  int max_qubits = 6;
};

/// Pauli tomography scheme: all 3^n settings with 2^n outcomes each.
///
/// Settings are ordered lexicographically with X < Y < Z (qubit 0 first).
/// Outcome r of a setting is a bit string over the qubits, qubit 0 being the
/// most significant bit; bit value 0 is the +1 eigenvector of the local
/// Pauli. Outcomes are flattened as nu = 2^n * s + r (0-based).
class TomographyScheme {
 public:
  TomographyScheme(int num_qubits, const SchemeOptions& options);

  int num_qubits() const { return n_; }
  int dim() const { return dim_; }
  int num_settings() const { return static_cast<int>(settings_.size()); }
  int num_outcomes() const { return num_settings() * dim_; }
  std::size_t num_paulis() const { return paulis_.size(); }

  const std::vector<Setting>& settings() const { return settings_; }
  const PauliTable& paulis() const { return paulis_; }
  std::size_t outcome_index(int setting, int outcome) const {
    return static_cast<std::size_t>(setting) * dim_ + outcome;
  }
  int setting_index(const std::string& bases) const;

  /// M_nu as a Kronecker product of single-qubit eigenprojectors.
  HermitianOperator projector(std::size_t nu) const;
  /// All M_nu; materialized on demand (memory grows as 6^n 4^n).
  std::vector<HermitianOperator> projectors() const;

  /// B_{nu,mu} = tr(M_nu Gamma_mu) / 2^n, sparse with 2^n entries per row.
  const SparseMatrix& b_matrix() const { return b_; }
  /// Moore-Penrose pseudo-inverse of B (4^n x 6^n).
  const SparseMatrix& b_pinv() const { return b_pinv_; }

  /// A_nu = 2^-n sum_mu (B^+)_{mu,nu} Gamma_mu.
  HermitianOperator dual_operator(std::size_t nu) const;

  /// P = B * coords via one Walsh-Hadamard transform per setting.
  void probabilities_from_coords(const RVector& coords, RVector& probs) const;
  /// out = B^T * weights.
  void adjoint_to_coords(const RVector& weights, RVector& out) const;
  /// sum_nu w_nu M_nu as a matrix.
  void weighted_projector_sum(const RVector& weights, CMatrix& out) const;

 private:
  int n_;
  int dim_;
  std::vector<Setting> settings_;
  PauliTable paulis_;
  // Pauli index of the string supported on outcome-bit mask S for setting s,
  // stored at [s * dim + S].
  std::vector<std::uint32_t> setting_paulis_;
  SparseMatrix b_;
  SparseMatrix b_pinv_;
};

/// Throws std::invalid_argument when n is outside [1, options.max_qubits].
std::shared_ptr<const TomographyScheme> build_scheme(int num_qubits,
                                                     const SchemeOptions& options = {});

/// Dense copy of B.
Eigen::MatrixXd build_b_matrix(const TomographyScheme& scheme);

/// Pseudo-inverse (B^T B)^{-1} B^T through an SVD. Singular values below
/// 1e-12 * sigma_max count as rank deficiency (IllPosedSchemeError).
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& b);

/// Canonical dual frame {A_nu}.
std::vector<HermitianOperator> dual_frame(const TomographyScheme& scheme);

/// Per-setting counts and frequencies, flattened in nu order.
class FrequencyData {
 public:
  FrequencyData() = default;

  /// Validates sum_r c_r^s = events_per_setting for every setting.
  static FrequencyData FromCounts(std::vector<std::int64_t> counts, int num_settings,
                                  std::int64_t events_per_setting);
  /// Frequencies without counts (e.g. exact Born probabilities). Each
  /// setting must sum to 1 within 1e-9.
  static FrequencyData FromFrequencies(RVector frequencies, int num_settings,
                                       std::int64_t events_per_setting);

  const RVector& frequencies() const { return freqs_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  bool has_counts() const { return !counts_.empty(); }
  std::int64_t events_per_setting() const { return events_; }
  int num_settings() const { return num_settings_; }
  std::size_t size() const { return static_cast<std::size_t>(freqs_.size()); }

 private:
  RVector freqs_;
  std::vector<std::int64_t> counts_;
  std::int64_t events_ = 0;
  int num_settings_ = 0;
};

/// P_nu = tr(rho M_nu), clipped to [0, 1]. Clipping beyond 1e-9 raises
/// InternalConsistencyError.
RVector born_probabilities(const QuantumState& rho, const TomographyScheme& scheme);

/// rho_LIN = sum_nu A_nu f_nu. Hermitian with unit trace; not necessarily
/// positive.
HermitianOperator linear_inversion(const FrequencyData& data,
                                   const TomographyScheme& scheme);
HermitianOperator linear_inversion(const RVector& frequencies,
                                   const TomographyScheme& scheme);

/// In-place unnormalized Walsh-Hadamard transform; size must be 2^k.
void walsh_hadamard(std::span<double> values);

}  // namespace tomobias

#endif  // TOMOBIAS_SCHEME_H_
