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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tomobias/sampling.h"
#include "tomobias/states.h"

namespace tomobias {
namespace {

using testing::max_abs;

TEST(FrameCoefficientsTest, IdentityHasZeroSpan) {
  for (int n = 1; n <= 3; ++n) {
    auto s = build_scheme(n);
    const FrameCoefficients fc = frame_coefficients(HermitianOperator::Identity(n), *s);
    EXPECT_NEAR(fc.h_squared, 0.0, 1e-20);
    for (int set = 0; set < s->num_settings(); ++set) {
      const auto block = fc.coefficients.segment(set * s->dim(), s->dim());
      EXPECT_LT(block.maxCoeff() - block.minCoeff(), 1e-10);
    }
  }
}

TEST(FrameCoefficientsTest, SigmaZSingleQubit) {
  auto s = build_scheme(1);
  const FrameCoefficients fc = frame_coefficients(pauli_string("Z"), *s);
  // l = tr(A_nu Z) with A_(Z,r) = 1/6 + (-1)^r Z/2 and X, Y duals orthogonal to Z.
  RVector expected(6);
  expected << 0, 0, 0, 0, 1, -1;
  EXPECT_LT((fc.coefficients - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(fc.h_squared, 4.0, 1e-13);
}

TEST(FrameCoefficientsTest, ReconstructsRandomOperator) {
  std::mt19937_64 rng(61);
  for (int n = 1; n <= 3; ++n) {
    auto s = build_scheme(n);
    const HermitianOperator l = testing::random_hermitian(n, rng);
    const FrameCoefficients fc = frame_coefficients(l, *s);
    const auto m = s->projectors();
    CMatrix back = CMatrix::Zero(s->dim(), s->dim());
    for (std::size_t nu = 0; nu < m.size(); ++nu) back += fc.coefficients(nu) * m[nu].matrix();
    EXPECT_LT(max_abs(back - l.matrix()), 1e-9);
    double h2 = 0.0;
    for (int set = 0; set < s->num_settings(); ++set) {
      double lo = 1e300, hi = -1e300;
      for (int r = 0; r < s->dim(); ++r) {
        lo = std::min(lo, fc.coefficients(s->outcome_index(set, r)));
        hi = std::max(hi, fc.coefficients(s->outcome_index(set, r)));
      }
      h2 += (hi - lo) * (hi - lo);
    }
    EXPECT_NEAR(fc.h_squared, h2, 1e-12 * h2);
    EXPECT_NEAR(span_squared(fc.coefficients, s->num_settings()), h2, 1e-12 * h2);
  }
}

TEST(HoeffdingTest, Penalty) {
  EXPECT_NEAR(hoeffding_penalty(4.0, 0.99, 100), 0.30348542587702926, 1e-15);
  EXPECT_EQ(hoeffding_penalty(4.0, 0.0, 100), 0.0);
  EXPECT_THROW(hoeffding_penalty(4.0, 1.0, 100), std::invalid_argument);
  EXPECT_THROW(hoeffding_penalty(4.0, 0.5, 0), std::invalid_argument);
}

TEST(HoeffdingTest, GammaZeroIsContraction) {
  auto s = build_scheme(2);
  std::mt19937_64 rng(62);
  const QuantumState rho = testing::random_state(2, rng);
  const FunctionalSpec f = fidelity_spec(ghz_vector(2));
  const WitnessOperator w = linearize(f, rho, *s);
  EXPECT_EQ(hoeffding_bound(rho.op(), w, 0.0, 100), w.value(rho.op()));
  EXPECT_GT(hoeffding_upper_bound(rho.op(), w, 0.68, 100), w.value(rho.op()));
}

TEST(NegativityWitnessTest, SeparableGuessIsTrivial) {
  auto s = build_scheme(2);
  const std::vector<int> a{0};
  const WitnessOperator w = negativity_witness(QuantumState::MaximallyMixed(2), a, *s);
  EXPECT_TRUE(w.trivial);
  EXPECT_EQ(max_abs(w.op.matrix()), 0.0);
  EXPECT_EQ(hoeffding_bound(QuantumState::MaximallyMixed(2).op(), w, 0.99, 100), 0.0);
}

TEST(NegativityWitnessTest, TightOnGhz) {
  auto s = build_scheme(4);
  const std::vector<int> a{0, 1};
  const QuantumState ghz = QuantumState::Pure(ghz_vector(4));
  const WitnessOperator w = negativity_witness(ghz, a, *s);
  EXPECT_FALSE(w.trivial);
  EXPECT_NEAR(w.value(ghz.op()), 0.5, 1e-12);
}

TEST(NegativityWitnessTest, LowerBoundOnRandomStates) {
  auto s = build_scheme(2);
  const std::vector<int> a{0};
  std::mt19937_64 rng(63);
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const WitnessOperator w = negativity_witness(QuantumState::Pure(bell), a, *s);
  for (int k = 0; k < 100; ++k) {
    const QuantumState rho = testing::random_state(2, rng);
    EXPECT_LE(w.value(rho.op()), negativity(rho.op(), a) + 1e-12);
    const WitnessOperator own = negativity_witness(rho, a, *s);
    EXPECT_NEAR(own.value(rho.op()), negativity(rho.op(), a), 1e-12);
  }
}

TEST(LinearizeTest, PurityAtMixedGuess) {
  auto s = build_scheme(2);
  FunctionalSpec pur;
  pur.kind = FunctionalKind::kPurity;
  pur.label = "purity";
  const QuantumState guess = QuantumState::MaximallyMixed(2);
  const WitnessOperator w = linearize(pur, guess, *s);
  // L = 2 guess - tr(guess^2) 1.
  const CMatrix expected = 2.0 * guess.matrix() - 0.25 * CMatrix::Identity(4, 4);
  EXPECT_LT(max_abs(w.op.matrix() - expected), 1e-14);
  EXPECT_EQ(w.direction, BoundDirection::kLower);
  std::mt19937_64 rng(64);
  for (int k = 0; k < 100; ++k) {
    const QuantumState rho = testing::random_state(2, rng);
    EXPECT_LE(w.value(rho.op()), purity(rho.op()) + 1e-12);
  }
}

TEST(LinearizeTest, TangencyAtGuess) {
  auto s = build_scheme(2);
  std::mt19937_64 rng(65);
  const QuantumState guess = testing::random_state(2, rng);
  const StateSpec spec = parse_state_spec("ghz:2@F=0.9");
  for (const char* text : {"fid", "purity", "entropy", "neg:0|1", "qfi:jz"}) {
    const FunctionalSpec f = parse_functional(text, spec);
    const WitnessOperator w = linearize(f, guess, *s);
    EXPECT_NEAR(w.value(guess.op()), evaluate(f, guess.op()), 1e-8) << text;
  }
}

TEST(LinearizeTest, EntropyIsUpperBound) {
  auto s = build_scheme(2);
  std::mt19937_64 rng(66);
  FunctionalSpec f;
  f.kind = FunctionalKind::kEntropy;
  f.label = "entropy";
  const WitnessOperator w = linearize(f, testing::random_state(2, rng), *s);
  EXPECT_EQ(w.direction, BoundDirection::kUpper);
  for (int k = 0; k < 100; ++k) {
    const QuantumState rho = testing::random_state(2, rng);
    EXPECT_GE(w.value(rho.op()), entropy(rho.op()) - 1e-12);
  }
}

TEST(LinearizeTest, ConvexFunctionalsAreLowerBounds) {
  auto s = build_scheme(2);
  std::mt19937_64 rng(67);
  const FunctionalSpec f = qfi_spec(jz_operator(2));
  const WitnessOperator w = linearize(f, testing::random_state(2, rng), *s);
  for (int k = 0; k < 100; ++k) {
    const QuantumState rho = testing::random_state(2, rng);
    EXPECT_LE(w.value(rho.op()), qfi(rho.op(), jz_operator(2)) + 1e-10);
  }
}

TEST(LinearizeTest, FidelityIsExactAndMixedFidelityRejected) {
  auto s = build_scheme(2);
  std::mt19937_64 rng(68);
  const CVector psi = testing::random_pure(2, rng);
  const WitnessOperator w = linearize(fidelity_spec(psi), QuantumState::MaximallyMixed(2), *s);
  EXPECT_EQ(w.direction, BoundDirection::kExact);
  const QuantumState rho = testing::random_state(2, rng);
  EXPECT_NEAR(w.value(rho.op()), fidelity_pure(rho.op(), psi), 1e-14);
  FunctionalSpec mixed;
  mixed.kind = FunctionalKind::kFidelityMixed;
  mixed.reference = rho;
  EXPECT_THROW(linearize(mixed, rho, *s), std::invalid_argument);
}

TEST(HoeffdingTest, CoverageSmoke) {
  // Fixed witness, fresh data per trial: the bound sits below tr(rho0 L)
  // with probability at least gamma.
  auto s = build_scheme(2);
  const QuantumState rho0 = make_state(parse_state_spec("ghz:2@F=0.9"));
  const WitnessOperator w = linearize(fidelity_spec(ghz_vector(2)), rho0, *s);
  const double truth = w.value(rho0.op());
  const RVector p = born_probabilities(rho0, *s);
  int covered = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    const FrequencyData data =
        toss_frequencies(p, s->num_settings(), 100, SeedPolicy{71, static_cast<std::uint64_t>(t), "cov"});
    covered += hoeffding_bound(linear_inversion(data, *s), w, 0.68, 100) <= truth ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(covered) / trials, 0.68);
}

}  // namespace
}  // namespace tomobias
