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

#include "tomobias/witness.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tomobias {
namespace {

// Eigenvalues of the partial transpose below this count as negative.
constexpr double kNegativeEig = 1e-12;

WitnessOperator with_frame(HermitianOperator l, const QuantumState& anchor,
                           BoundDirection direction, const TomographyScheme& scheme) {
  if (l.dim() != scheme.dim()) throw std::invalid_argument("witness dimension mismatch");
  WitnessOperator w;
  FrameCoefficients fc = frame_coefficients(l, scheme);
  w.op = std::move(l);
  w.coefficients = std::move(fc.coefficients);
  w.h_squared = fc.h_squared;
  w.anchor = anchor;
  w.direction = direction;
  return w;
}

}  // namespace

double span_squared(const RVector& coefficients, int num_settings) {
  const Eigen::Index per = coefficients.size() / num_settings;
  double h2 = 0.0;
  for (int s = 0; s < num_settings; ++s) {
    const auto seg = coefficients.segment(s * per, per);
    const double span = seg.maxCoeff() - seg.minCoeff();
    h2 += span * span;
  }
  return h2;
}

FrameCoefficients frame_coefficients(const HermitianOperator& l, const TomographyScheme& scheme) {
  if (l.dim() != scheme.dim()) throw std::invalid_argument("operator dimension mismatch");
  RVector coords;
  scheme.paulis().to_coords(l.matrix(), coords);
  FrameCoefficients fc;
  fc.coefficients = (scheme.b_pinv().transpose() * coords) / static_cast<double>(scheme.dim());

  CMatrix back;
  scheme.weighted_projector_sum(fc.coefficients, back);
  const double residual = (back - l.matrix()).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    throw InternalConsistencyError("frame decomposition misses L by " + std::to_string(residual));
  }
  fc.h_squared = span_squared(fc.coefficients, scheme.num_settings());
  return fc;
}

WitnessOperator linearize(const FunctionalSpec& spec, const QuantumState& guess,
                          const TomographyScheme& scheme) {
  if (guess.dim() != scheme.dim()) throw std::invalid_argument("anchor dimension mismatch");
  switch (spec.kind) {
    case FunctionalKind::kNegativity:
      return negativity_witness(guess, spec.party_a, scheme);
    case FunctionalKind::kFidelityPure:
      return with_frame(HermitianOperator::Projector(spec.target), guess, BoundDirection::kExact,
                        scheme);
    case FunctionalKind::kFidelityMixed:
      throw std::invalid_argument("the Uhlmann fidelity has no linearization here");
    default:
      break;
  }
  const int d = guess.dim();
  const double g = evaluate(spec, guess.op());
  const HermitianOperator grad = gradient_operator(spec, guess.op());
  // Traceless part carries l_i; l0 = g - sum_i x'_i l_i = g - tr(guess G0).
  const CMatrix g0 = grad.matrix() - (grad.trace() / d) * CMatrix::Identity(d, d);
  const double shift = g - guess.op().inner(HermitianOperator::FromTrusted(g0));
  CMatrix l = g0 + shift * CMatrix::Identity(d, d);
  const BoundDirection dir =
      spec.curvature() == Curvature::kConcave ? BoundDirection::kUpper : BoundDirection::kLower;
  return with_frame(HermitianOperator::FromTrusted(0.5 * (l + l.adjoint())), guess, dir, scheme);
}

WitnessOperator negativity_witness(const QuantumState& guess, std::span<const int> party_a,
                                   const TomographyScheme& scheme) {
  const HermitianOperator pt = partial_transpose(guess.op(), party_a);
  const EigenDecomposition eig = eig_hermitian(pt);
  const Eigen::Index d = guess.dim();
  CMatrix q = CMatrix::Zero(d, d);
  bool any = false;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (eig.eigenvalues(k) < -kNegativeEig) {
      q += eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
      any = true;
    }
  }
  const HermitianOperator q_op = HermitianOperator::FromTrusted(0.5 * (q + q.adjoint()));
  HermitianOperator l = partial_transpose(q_op, party_a) * -1.0;
  WitnessOperator w = with_frame(std::move(l), guess, BoundDirection::kLower, scheme);
  w.trivial = !any;
  return w;
}

WitnessOperator witness_from_operator(const HermitianOperator& l, const QuantumState& anchor,
                                      const TomographyScheme& scheme) {
  return with_frame(l, anchor, BoundDirection::kExact, scheme);
}

QuantumState regularize_anchor(const QuantumState& guess, double eps) {
  const int d = guess.dim();
  const CMatrix m =
      (1.0 - eps) * guess.matrix() + eps * CMatrix::Identity(d, d) / static_cast<double>(d);
  return QuantumState::FromTrusted(HermitianOperator::FromTrusted(m));
}

double hoeffding_penalty(double h_squared, double gamma, std::int64_t events_per_setting) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("confidence level must lie in [0, 1)");
  }
  if (events_per_setting < 1) throw std::invalid_argument("N_s must be >= 1");
  if (!(h_squared >= 0.0)) throw std::invalid_argument("h^2 must be >= 0");
  return std::sqrt(h_squared * std::abs(std::log(1.0 - gamma)) /
                   (2.0 * static_cast<double>(events_per_setting)));
}

double hoeffding_bound(const HermitianOperator& rho_lin, const WitnessOperator& witness,
                       double gamma, std::int64_t events_per_setting) {
  return witness.value(rho_lin) - hoeffding_penalty(witness.h_squared, gamma, events_per_setting);
}

double hoeffding_upper_bound(const HermitianOperator& rho_lin, const WitnessOperator& witness,
                             double gamma, std::int64_t events_per_setting) {
  return witness.value(rho_lin) + hoeffding_penalty(witness.h_squared, gamma, events_per_setting);
}

}  // namespace tomobias
