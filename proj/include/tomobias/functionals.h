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

#ifndef TOMOBIAS_FUNCTIONALS_H_
#define TOMOBIAS_FUNCTIONALS_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tomobias/operator.h"

namespace tomobias {

struct StateSpec;

/// Spectral gradients need a full-rank point.
class DegenerateGuessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FunctionalKind { kFidelityPure, kFidelityMixed, kPurity, kEntropy, kNegativity, kQfi };
enum class Curvature { kConvex, kConcave, kLinear };

/// A scalar function g(rho) together with whatever it is evaluated against.
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::kPurity;
  std::string label;
  CVector target;                       // kFidelityPure
  std::optional<QuantumState> reference;  // kFidelityMixed
  std::vector<int> party_a;             // kNegativity
  HermitianOperator generator;          // kQfi

  Curvature curvature() const;
  /// Uhlmann fidelity, entropy and QFI are only defined on states.
  bool requires_state() const;
};

/// Parses "fid" (the state's own target), "fid:<family>", "neg:01|23",
/// "qfi:jz", "purity", "entropy" for the qubit count of `state`.
FunctionalSpec parse_functional(std::string_view text, const StateSpec& state);

FunctionalSpec fidelity_spec(const CVector& target, std::string label = "fid");
FunctionalSpec negativity_spec(std::vector<int> party_a);
FunctionalSpec qfi_spec(const HermitianOperator& generator, std::string label = "qfi");

/// Evaluates g on a Hermitian operator. Throws std::invalid_argument when the
/// functional requires a state and rho is not one.
double evaluate(const FunctionalSpec& spec, const HermitianOperator& rho);

/// <psi|rho|psi>; linear in rho and defined for unphysical rho.
double fidelity_pure(const HermitianOperator& rho, const CVector& psi);
/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 without validation.
double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma);
double fidelity_mixed(const HermitianOperator& rho, const HermitianOperator& sigma);

double purity(const HermitianOperator& rho);
/// Components 2 tr(S_i rho) over traceless_basis().
RVector purity_gradient(const HermitianOperator& rho);

/// -tr(rho log rho), natural log; eigenvalues below 1e-14 count as zero.
double entropy(const HermitianOperator& rho);
/// Components -tr(S_i (log rho - 1)); requires full rank.
RVector entropy_gradient(const HermitianOperator& rho);

/// Sum of |negative eigenvalues| of the partial transpose on party_a.
double negativity(const HermitianOperator& rho, std::span<const int> party_a);

/// 2 sum_jk (l_j - l_k)^2 / (l_j + l_k) |H_jk|^2 in the eigenbasis of rho;
/// pairs with l_j + l_k <= 1e-14 are dropped.
double qfi(const HermitianOperator& rho, const HermitianOperator& generator);
RVector qfi_gradient(const HermitianOperator& rho, const HermitianOperator& generator);

/// J_z = 1/2 sum_i sigma_z^(i).
HermitianOperator jz_operator(int num_qubits);

/// Hermitian G with dg(rho + t X)/dt = tr(G X) for traceless X. Only its
/// traceless part is meaningful.
HermitianOperator gradient_operator(const FunctionalSpec& spec, const HermitianOperator& rho);

/// c_i = tr(S_i G) over traceless_basis().
RVector traceless_coefficients(const HermitianOperator& g);

}  // namespace tomobias

#endif  // TOMOBIAS_FUNCTIONALS_H_
