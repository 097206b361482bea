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

#include "tomobias/operator.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace tomobias {
namespace {

using testing::max_abs;

TEST(HermitianOperatorTest, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, std::invalid_argument);
}

TEST(HermitianOperatorTest, RejectsNonPowerOfTwo) {
  EXPECT_THROW(HermitianOperator{CMatrix::Identity(3, 3)}, std::invalid_argument);
}

TEST(QuantumStateTest, Invariants) {
  EXPECT_THROW(QuantumState{HermitianOperator::Identity(1)}, std::invalid_argument);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  EXPECT_THROW(QuantumState{HermitianOperator(m)}, std::invalid_argument);
  const QuantumState mixed = QuantumState::MaximallyMixed(2);
  EXPECT_NEAR(mixed.op().trace(), 1.0, 1e-15);
}

TEST(KronTest, Examples) {
  const HermitianOperator z = pauli_string("Z");
  EXPECT_EQ(max_abs(kron(std::vector{z}).matrix() - z.matrix()), 0.0);
  const HermitianOperator id = HermitianOperator::Identity(1);
  EXPECT_EQ(max_abs(kron(std::vector{id, id}).matrix() - CMatrix::Identity(4, 4)), 0.0);
  const HermitianOperator x = pauli_string("X");
  CVector e00 = CVector::Zero(4);
  e00(0) = 1.0;
  const CVector out = kron(std::vector{x, x}).matrix() * e00;
  EXPECT_NEAR(std::abs(out(3) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(PauliStringTest, Examples) {
  EXPECT_EQ(max_abs(pauli_string("III").matrix() - CMatrix::Identity(8, 8)), 0.0);
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_EQ(max_abs(pauli_string("X").matrix() - x), 0.0);
  EXPECT_THROW(pauli_string("XQ"), std::invalid_argument);
}

TEST(PauliStringTest, TraceOrthogonality) {
  std::vector<HermitianOperator> all;
  for (const char* a : {"I", "X", "Y", "Z"}) {
    for (const char* b : {"I", "X", "Y", "Z"}) all.push_back(pauli_string(std::string(a) + b));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      EXPECT_NEAR(all[i].inner(all[j]), i == j ? 4.0 : 0.0, 1e-14);
    }
  }
}

TEST(PauliTableTest, CoordinatesMatchExplicitStrings) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    const PauliTable table(n);
    const HermitianOperator h = testing::random_hermitian(n, rng);
    RVector coords;
    table.to_coords(h.matrix(), coords);
    ASSERT_EQ(static_cast<std::size_t>(coords.size()), table.size());
    for (std::size_t mu = 0; mu < table.size(); ++mu) {
      EXPECT_NEAR(coords(mu), h.inner(pauli_string(table.label(mu))), 1e-11);
      EXPECT_EQ(PauliTable::index_of(table.label(mu)), mu);
    }
    CMatrix back;
    table.from_coords(coords, 1.0 / (1 << n), back);
    EXPECT_LT(max_abs(back - h.matrix()), 1e-12);
  }
}

TEST(TracelessBasisTest, SingleQubit) {
  const auto basis = traceless_basis(1);
  ASSERT_EQ(basis.size(), 3u);
  const char* labels[] = {"X", "Y", "Z"};
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(max_abs(basis[i].matrix() - pauli_string(labels[i]).matrix() / std::sqrt(2.0)),
              1e-15);
  }
}

TEST(TracelessBasisTest, OrthonormalTwoQubits) {
  const auto basis = traceless_basis(2);
  ASSERT_EQ(basis.size(), 15u);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_NEAR(basis[i].trace(), 0.0, 1e-15);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EXPECT_NEAR(basis[i].inner(basis[j]), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(EigHermitianTest, Examples) {
  const EigenDecomposition z = eig_hermitian(pauli_string("Z"));
  EXPECT_NEAR(z.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(z.eigenvalues(1), 1.0, 1e-15);
  const EigenDecomposition mixed = eig_hermitian(QuantumState::MaximallyMixed(3).op());
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(mixed.eigenvalues(i), 0.125, 1e-15);
}

TEST(EigHermitianTest, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    const HermitianOperator h = testing::random_hermitian(n, rng);
    const EigenDecomposition e = eig_hermitian(h);
    for (int i = 1; i < h.dim(); ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
    const CMatrix back =
        e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    EXPECT_LT(max_abs(back - h.matrix()), 1e-10);
    EXPECT_LT(max_abs(e.eigenvectors.adjoint() * e.eigenvectors -
                      CMatrix::Identity(h.dim(), h.dim())),
              1e-12);
  }
}

TEST(PartialTransposeTest, EmptyPartyIsIdentity) {
  std::mt19937_64 rng(3);
  const HermitianOperator h = testing::random_hermitian(3, rng);
  EXPECT_EQ(max_abs(partial_transpose(h, {}).matrix() - h.matrix()), 0.0);
}

TEST(PartialTransposeTest, BellSpectrum) {
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const std::vector<int> a{0};
  const RVector ev = eig_hermitian(partial_transpose(HermitianOperator::Projector(phi), a)).eigenvalues;
  EXPECT_NEAR(ev(0), -0.5, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.5, 1e-14);
}

TEST(PartialTransposeTest, GhzFourQubits) {
  CVector ghz = CVector::Zero(16);
  ghz(0) = ghz(15) = 1.0 / std::sqrt(2.0);
  const std::vector<int> a{0, 1};
  const RVector ev = eig_hermitian(partial_transpose(HermitianOperator::Projector(ghz), a)).eigenvalues;
  EXPECT_NEAR(ev(0), -0.5, 1e-14);
  EXPECT_GT(ev(1), -1e-14);
}

TEST(PartialTransposeTest, MatchesExplicitIndexSwap) {
  std::mt19937_64 rng(9);
  const HermitianOperator h = testing::random_hermitian(3, rng);
  const std::vector<int> a{1};
  const CMatrix pt = partial_transpose(h, a).matrix();
  // Qubit 1 is bit value 2 of the index.
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int bi = (i >> 1) & 1, bj = (j >> 1) & 1;
      const int i2 = (i & ~2) | (bj << 1), j2 = (j & ~2) | (bi << 1);
      EXPECT_EQ(pt(i2, j2), h.matrix()(i, j));
    }
  }
}

}  // namespace
}  // namespace tomobias
