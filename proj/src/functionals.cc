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

#include "tomobias/functionals.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "tomobias/states.h"

namespace tomobias {
namespace {

constexpr double kZeroEig = 1e-14;
constexpr double kFullRankEig = 1e-12;

void require_state(const HermitianOperator& rho, const char* what) {
  if (!QuantumState::IsPhysical(rho)) {
    throw std::invalid_argument(std::string(what) + " is only defined on density matrices");
  }
}

void require_full_rank(const RVector& eigenvalues, const char* what) {
  if (!(eigenvalues(0) > kFullRankEig)) {
    throw DegenerateGuessError(std::string(what) +
                               " gradient needs a full-rank state; regularize the point");
  }
}

}  // namespace

Curvature FunctionalSpec::curvature() const {
  switch (kind) {
    case FunctionalKind::kFidelityPure:
    case FunctionalKind::kFidelityMixed:
      return Curvature::kLinear;
    case FunctionalKind::kEntropy:
      return Curvature::kConcave;
    case FunctionalKind::kPurity:
    case FunctionalKind::kNegativity:
    case FunctionalKind::kQfi:
      return Curvature::kConvex;
  }
  return Curvature::kLinear;
}

bool FunctionalSpec::requires_state() const {
  return kind == FunctionalKind::kFidelityMixed || kind == FunctionalKind::kEntropy ||
         kind == FunctionalKind::kQfi;
}

FunctionalSpec fidelity_spec(const CVector& target, std::string label) {
  FunctionalSpec spec;
  spec.kind = FunctionalKind::kFidelityPure;
  spec.label = std::move(label);
  spec.target = target / target.norm();
  return spec;
}

FunctionalSpec negativity_spec(std::vector<int> party_a) {
  FunctionalSpec spec;
  spec.kind = FunctionalKind::kNegativity;
  spec.label = "neg:";
  for (int q : party_a) spec.label += std::to_string(q);
  spec.party_a = std::move(party_a);
  return spec;
}

FunctionalSpec qfi_spec(const HermitianOperator& generator, std::string label) {
  FunctionalSpec spec;
  spec.kind = FunctionalKind::kQfi;
  spec.label = std::move(label);
  spec.generator = generator;
  return spec;
}

FunctionalSpec parse_functional(std::string_view text, const StateSpec& state) {
  const int n = state.n_qubits;
  std::string_view head = text, arg;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  FunctionalSpec spec;
  if (head == "fid") {
    StateFamily family = state.family;
    if (!arg.empty()) family = parse_state_spec(std::string(arg) + ":" + std::to_string(n)).family;
    if (auto psi = target_vector(family, n)) {
      spec = fidelity_spec(*psi, std::string(text));
    } else {
      spec.kind = FunctionalKind::kFidelityMixed;
      spec.reference = target_state(family, n);
      spec.label = std::string(text);
    }
  } else if (head == "neg") {
    // "01|23": party A is the block before the bar.
    const auto bar = arg.find('|');
    const std::string_view a = arg.substr(0, bar);
    if (a.empty()) throw std::invalid_argument("negativity needs a party, e.g. neg:01|23");
    std::vector<int> party;
    for (char c : a) {
      if (c < '0' || c > '9' || c - '0' >= n) {
        throw std::invalid_argument("bad qubit '" + std::string(1, c) + "' in '" +
                                    std::string(text) + "'");
      }
      party.push_back(c - '0');
    }
    spec = negativity_spec(std::move(party));
    spec.label = std::string(text);
  } else if (head == "qfi") {
    if (!arg.empty() && arg != "jz") {
      throw std::invalid_argument("only qfi:jz is supported");
    }
    spec = qfi_spec(jz_operator(n), std::string(text));
  } else if (head == "purity" && arg.empty()) {
    spec.kind = FunctionalKind::kPurity;
    spec.label = "purity";
  } else if (head == "entropy" && arg.empty()) {
    spec.kind = FunctionalKind::kEntropy;
    spec.label = "entropy";
  } else {
    throw std::invalid_argument("unknown functional '" + std::string(text) + "'");
  }
  return spec;
}

double evaluate(const FunctionalSpec& spec, const HermitianOperator& rho) {
  switch (spec.kind) {
    case FunctionalKind::kFidelityPure: return fidelity_pure(rho, spec.target);
    case FunctionalKind::kFidelityMixed: return fidelity_mixed(rho, spec.reference->op());
    case FunctionalKind::kPurity: return purity(rho);
    case FunctionalKind::kEntropy: return entropy(rho);
    case FunctionalKind::kNegativity: return negativity(rho, spec.party_a);
    case FunctionalKind::kQfi:
      require_state(rho, "quantum Fisher information");
      return qfi(rho, spec.generator);
  }
  throw std::invalid_argument("unknown functional");
}

double fidelity_pure(const HermitianOperator& rho, const CVector& psi) {
  if (psi.size() != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return rho.expectation(psi);
}

double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("fidelity: dimension mismatch");
  // F = ||sqrt(rho) sqrt(sigma)||_1^2. Eigenvalues at rounding level are set to
  // zero first: their square roots would otherwise leak ~1e-8 into F.
  auto root = [](const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    const double cut = kZeroEig * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    const RVector sq = es.eigenvalues().unaryExpr([cut](double l) { return l > cut ? std::sqrt(l) : 0.0; });
    return CMatrix(es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint());
  };
  const CMatrix product = root(rho) * root(sigma);
  const double tr = Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
  return tr * tr;
}

double fidelity_mixed(const HermitianOperator& rho, const HermitianOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  require_state(rho, "Uhlmann fidelity");
  require_state(sigma, "Uhlmann fidelity");
  return std::clamp(uhlmann_fidelity(rho.matrix(), sigma.matrix()), 0.0, 1.0);
}

double purity(const HermitianOperator& rho) { return rho.inner(rho); }

RVector purity_gradient(const HermitianOperator& rho) {
  return traceless_coefficients(rho * 2.0);
}

double entropy(const HermitianOperator& rho) {
  require_state(rho, "von Neumann entropy");
  const EigenDecomposition eig = eig_hermitian(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double l = eig.eigenvalues(i);
    if (l > kZeroEig) s -= l * std::log(l);
  }
  return std::max(s, 0.0);
}

namespace {

HermitianOperator entropy_gradient_operator(const HermitianOperator& rho) {
  require_state(rho, "von Neumann entropy");
  const EigenDecomposition eig = eig_hermitian(rho);
  require_full_rank(eig.eigenvalues, "entropy");
  const RVector neg_log = -eig.eigenvalues.array().log();
  CMatrix g = eig.eigenvectors * neg_log.asDiagonal() * eig.eigenvectors.adjoint();
  g += CMatrix::Identity(rho.dim(), rho.dim());
  return HermitianOperator::FromTrusted(0.5 * (g + g.adjoint()));
}

HermitianOperator qfi_gradient_operator(const HermitianOperator& rho,
                                        const HermitianOperator& generator) {
  require_state(rho, "quantum Fisher information");
  const EigenDecomposition eig = eig_hermitian(rho);
  require_full_rank(eig.eigenvalues, "quantum Fisher information");
  const RVector& l = eig.eigenvalues;
  const CMatrix& v = eig.eigenvectors;
  const CMatrix h = v.adjoint() * generator.matrix() * v;
  const Eigen::Index d = rho.dim();
  // df = 4 sum_jkl c_jkl H_jk S_kl H_lj = sum_kl S_kl K_lk.
  CMatrix k = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index a = 0; a < d; ++a) {      // k index
      const double sjk = l(j) + l(a);
      if (sjk <= kZeroEig) continue;
      for (Eigen::Index b = 0; b < d; ++b) {    // l index
        const double sjl = l(j) + l(b);
        if (sjl <= kZeroEig) continue;
        const double c = (l(j) * l(a) + l(j) * l(b) + l(a) * l(b) - 3.0 * l(j) * l(j)) /
                         (sjk * sjl);
        k(b, a) += 4.0 * c * h(b, j) * h(j, a);
      }
    }
  }
  CMatrix g = v * k * v.adjoint();
  return HermitianOperator::FromTrusted(0.5 * (g + g.adjoint()));
}

}  // namespace

RVector entropy_gradient(const HermitianOperator& rho) {
  return traceless_coefficients(entropy_gradient_operator(rho));
}

double negativity(const HermitianOperator& rho, std::span<const int> party_a) {
  const HermitianOperator pt = partial_transpose(rho, party_a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(pt.matrix(), Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    neg += std::max(-es.eigenvalues()(i), 0.0);
  }
  return neg;
}

double qfi(const HermitianOperator& rho, const HermitianOperator& generator) {
  if (rho.dim() != generator.dim()) throw std::invalid_argument("QFI: dimension mismatch");
  const EigenDecomposition eig = eig_hermitian(rho);
  const RVector& l = eig.eigenvalues;
  const CMatrix h = eig.eigenvectors.adjoint() * generator.matrix() * eig.eigenvectors;
  double f = 0.0;
  for (Eigen::Index j = 0; j < l.size(); ++j) {
    for (Eigen::Index k = 0; k < l.size(); ++k) {
      const double s = l(j) + l(k);
      if (s <= kZeroEig) continue;
      const double diff = l(j) - l(k);
      f += 2.0 * diff * diff / s * std::norm(h(j, k));
    }
  }
  return f;
}

RVector qfi_gradient(const HermitianOperator& rho, const HermitianOperator& generator) {
  return traceless_coefficients(qfi_gradient_operator(rho, generator));
}

HermitianOperator jz_operator(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("J_z needs n >= 1");
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const int weight = std::popcount(static_cast<std::uint64_t>(k));
    m(k, k) = 0.5 * (num_qubits - 2 * weight);
  }
  return HermitianOperator::FromTrusted(std::move(m));
}

HermitianOperator gradient_operator(const FunctionalSpec& spec, const HermitianOperator& rho) {
  switch (spec.kind) {
    case FunctionalKind::kFidelityPure:
      return HermitianOperator::Projector(spec.target);
    case FunctionalKind::kPurity:
      return rho * 2.0;
    case FunctionalKind::kEntropy:
      return entropy_gradient_operator(rho);
    case FunctionalKind::kQfi:
      return qfi_gradient_operator(rho, spec.generator);
    case FunctionalKind::kFidelityMixed:
    case FunctionalKind::kNegativity:
      break;
  }
  throw std::invalid_argument("no gradient available for functional '" + spec.label + "'");
}

RVector traceless_coefficients(const HermitianOperator& g) {
  const PauliTable table(g.num_qubits());
  RVector coords;
  table.to_coords(g.matrix(), coords);
  return coords.tail(coords.size() - 1) / std::sqrt(static_cast<double>(g.dim()));
}

}  // namespace tomobias
