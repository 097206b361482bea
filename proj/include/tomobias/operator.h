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

#ifndef TOMOBIAS_OPERATOR_H_
#define TOMOBIAS_OPERATOR_H_

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tomobias {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPhysicalEigTol = 1e-9;

// Qubit ordering: qubit 0 is the leftmost tensor factor, i.e. the most
// significant bit of a computational basis index.

/// Complex Hermitian d x d matrix with d = 2^n.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Validates Hermiticity (max elementwise deviation <= kHermitianTol) and
  /// that the dimension is a power of two. The stored matrix is symmetrized.
  explicit HermitianOperator(CMatrix entries);

  /// Skips validation; the caller guarantees the invariants.
  static HermitianOperator FromTrusted(CMatrix entries);

  static HermitianOperator Identity(int num_qubits);
  static HermitianOperator Zero(int num_qubits);
  static HermitianOperator Projector(const CVector& psi);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int num_qubits() const { return num_qubits_; }

  double trace() const { return m_.trace().real(); }
  /// Hilbert-Schmidt inner product tr(this * other), real for Hermitian pairs.
  double inner(const HermitianOperator& other) const;
  double expectation(const CVector& psi) const;

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  friend HermitianOperator operator*(double s, const HermitianOperator& h) {
    return h * s;
  }

 private:
  CMatrix m_;
  int num_qubits_ = 0;
};

/// A HermitianOperator with unit trace and no eigenvalue below
/// -kPhysicalEigTol.
class QuantumState {
 public:
  QuantumState() = default;
  /// Throws std::invalid_argument if the operator is not a density matrix.
  explicit QuantumState(HermitianOperator op);
  static QuantumState FromTrusted(HermitianOperator op);
  static QuantumState MaximallyMixed(int num_qubits);
  static QuantumState Pure(const CVector& psi);

  const HermitianOperator& op() const { return op_; }
  const CMatrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }
  int num_qubits() const { return op_.num_qubits(); }

  operator const HermitianOperator&() const { return op_; }  // NOLINT

  static bool IsPhysical(const HermitianOperator& op);

 private:
  HermitianOperator op_;
};

struct EigenDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // orthonormal columns
};

HermitianOperator kron(std::span<const HermitianOperator> factors);
CMatrix kron_matrices(std::span<const CMatrix> factors);

/// Single-qubit Pauli matrix for 'I', 'X', 'Y' or 'Z'.
CMatrix pauli_matrix(char label);
HermitianOperator pauli_string(std::string_view label);

/// Orthonormal traceless Hermitian basis Gamma_mu / sqrt(2^n), mu >= 1, in
/// Pauli index order (see PauliTable).
std::vector<HermitianOperator> traceless_basis(int num_qubits);

/// Throws std::invalid_argument for non-Hermitian input.
EigenDecomposition eig_hermitian(const CMatrix& m);
EigenDecomposition eig_hermitian(const HermitianOperator& op);

HermitianOperator partial_transpose(const HermitianOperator& op,
                                    std::span<const int> party_a);
CMatrix partial_transpose_matrix(const CMatrix& m, int num_qubits,
                                 std::uint64_t party_mask);

double max_hermitian_deviation(const CMatrix& m);
bool is_power_of_two(std::int64_t v);
int qubits_for_dim(std::int64_t dim);

/// Sparse description of every n-qubit Pauli string.
///
/// The Pauli index mu is the base-4 number whose digits (I=0, X=1, Y=2, Z=3)
/// are the single-qubit factors, qubit 0 being the most significant digit, so
/// mu = 0 is the identity and mu = 1 is I...IX. Each Gamma_mu acts on a
/// basis vector as Gamma_mu |k> = phase_mu(k) |k xor flip_mu>, which makes
/// coordinate transforms O(4^n 2^n).
class PauliTable {
 public:
  explicit PauliTable(int num_qubits);

  int num_qubits() const { return n_; }
  int dim() const { return dim_; }
  std::size_t size() const { return flip_.size(); }

  /// Phase of Gamma_mu |k>.
  Complex phase(std::size_t mu, std::uint32_t k) const;
  std::uint32_t flip(std::size_t mu) const { return flip_[mu]; }
  /// Number of non-identity factors.
  int weight(std::size_t mu) const { return weight_[mu]; }
  std::string label(std::size_t mu) const;
  static std::size_t index_of(std::string_view label);

  /// coords[mu] = tr(m Gamma_mu), for Hermitian m.
  void to_coords(const CMatrix& m, RVector& coords) const;
  /// m = scale * sum_mu coords[mu] Gamma_mu.
  void from_coords(const RVector& coords, double scale, CMatrix& m) const;

 private:
  int n_;
  int dim_;
  std::vector<std::uint32_t> flip_;
  std::vector<std::uint32_t> sign_mask_;
  std::vector<std::uint8_t> y_count_;
  std::vector<std::uint8_t> weight_;
  std::vector<std::uint32_t> by_flip_sign_;  // (flip << n) + sign -> mu
};

}  // namespace tomobias

#endif  // TOMOBIAS_OPERATOR_H_
