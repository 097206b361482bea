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

#include "tomobias/scheme.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tomobias/states.h"

namespace tomobias {
namespace {

using testing::max_abs;

TEST(BuildSchemeTest, Sizes) {
  for (int n = 1; n <= 4; ++n) {
    auto s = build_scheme(n);
    EXPECT_EQ(s->num_settings(), static_cast<int>(std::pow(3, n)));
    EXPECT_EQ(s->num_outcomes(), static_cast<int>(std::pow(6, n)));
    EXPECT_EQ(s->num_paulis(), static_cast<std::size_t>(1) << (2 * n));
  }
  EXPECT_THROW(build_scheme(0), std::invalid_argument);
  EXPECT_THROW(build_scheme(7), std::invalid_argument);
}

TEST(BuildSchemeTest, SettingOrder) {
  auto s = build_scheme(2);
  const std::vector<std::string> expected{"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"};
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(s->settings()[i].bases, expected[i]);
    EXPECT_EQ(s->setting_index(expected[i]), i);
  }
  EXPECT_EQ(s->outcome_index(3, 2), 14u);
}

TEST(BuildSchemeTest, ProjectorsAreRankOneAndComplete) {
  for (int n = 1; n <= 3; ++n) {
    auto s = build_scheme(n);
    const auto m = s->projectors();
    for (int set = 0; set < s->num_settings(); ++set) {
      CMatrix sum = CMatrix::Zero(s->dim(), s->dim());
      for (int r = 0; r < s->dim(); ++r) {
        const CMatrix& p = m[s->outcome_index(set, r)].matrix();
        EXPECT_LT(max_abs(p * p - p), 1e-12);
        EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
        sum += p;
      }
      EXPECT_LT(max_abs(sum - CMatrix::Identity(s->dim(), s->dim())), 1e-12);
    }
  }
  // Setting Z, outcome 0 is |0><0|.
  auto one = build_scheme(1);
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  EXPECT_LT(max_abs(one->projector(one->outcome_index(2, 0)).matrix() - zero), 1e-15);
}

TEST(BMatrixTest, SingleQubitRows) {
  auto s = build_scheme(1);
  const Eigen::MatrixXd b = build_b_matrix(*s);
  ASSERT_EQ(b.rows(), 6);
  ASSERT_EQ(b.cols(), 4);
  Eigen::MatrixXd expected(6, 4);
  expected << 0.5, 0.5, 0, 0,   //
      0.5, -0.5, 0, 0,          //
      0.5, 0, 0.5, 0,           //
      0.5, 0, -0.5, 0,          //
      0.5, 0, 0, 0.5,           //
      0.5, 0, 0, -0.5;
  EXPECT_LT((b - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BMatrixTest, IdentityColumnAndRank) {
  auto s = build_scheme(2);
  const Eigen::MatrixXd b = build_b_matrix(*s);
  EXPECT_LT((b.col(0).array() - 0.25).abs().maxCoeff(), 1e-15);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  const auto sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-12 * sv(0) ? 1 : 0;
  EXPECT_EQ(rank, 16);
}

TEST(BMatrixTest, SparsePseudoInverseMatchesSvd) {
  for (int n = 1; n <= 3; ++n) {
    auto s = build_scheme(n);
    const Eigen::MatrixXd svd = pseudo_inverse(build_b_matrix(*s));
    EXPECT_LT((svd - Eigen::MatrixXd(s->b_pinv())).cwiseAbs().maxCoeff(), 1e-12) << n;
  }
}

TEST(BMatrixTest, RankDeficientIsIllPosed) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(6, 4);
  b.col(0).setConstant(0.5);
  b.col(1).setConstant(0.5);
  EXPECT_THROW(pseudo_inverse(b), IllPosedSchemeError);
}

TEST(DualFrameTest, SingleQubitZeroOutcome) {
  auto s = build_scheme(1);
  const auto a = dual_frame(*s);
  const CMatrix expected =
      CMatrix::Identity(2, 2) / 6.0 + pauli_string("Z").matrix() / 2.0;
  EXPECT_LT(max_abs(a[s->outcome_index(2, 0)].matrix() - expected), 1e-14);
}

TEST(DualFrameTest, FrameAndDualIdentities) {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 3; ++n) {
    auto s = build_scheme(n);
    const auto a = dual_frame(*s);
    const auto m = s->projectors();
    const int d = s->dim();
    CMatrix total = CMatrix::Zero(d, d);
    for (const auto& op : a) total += op.matrix();
    EXPECT_LT(max_abs(total - CMatrix::Identity(d, d)), 1e-12);
    for (int trial = 0; trial < 3; ++trial) {
      const HermitianOperator x = testing::random_hermitian(n, rng);
      CMatrix frame = CMatrix::Zero(d, d), dual = CMatrix::Zero(d, d);
      for (std::size_t nu = 0; nu < a.size(); ++nu) {
        frame += a[nu].matrix() * m[nu].inner(x);
        dual += m[nu].matrix() * a[nu].inner(x);
      }
      EXPECT_LT(max_abs(frame - x.matrix()), 1e-9);
      EXPECT_LT(max_abs(dual - x.matrix()), 1e-9);
    }
    std::string zs(n, 'Z');
    const HermitianOperator z = pauli_string(zs);
    CMatrix back = CMatrix::Zero(d, d);
    for (std::size_t nu = 0; nu < a.size(); ++nu) back += a[nu].matrix() * m[nu].inner(z);
    EXPECT_LT(max_abs(back - z.matrix()), 1e-9);
  }
}

TEST(BornProbabilitiesTest, Examples) {
  auto one = build_scheme(1);
  CVector zero = CVector::Zero(2);
  zero(0) = 1.0;
  const RVector p = born_probabilities(QuantumState::Pure(zero), *one);
  EXPECT_NEAR(p(one->outcome_index(2, 0)), 1.0, 1e-15);
  EXPECT_NEAR(p(one->outcome_index(2, 1)), 0.0, 1e-15);

  auto three = build_scheme(3);
  const RVector u = born_probabilities(QuantumState::MaximallyMixed(3), *three);
  EXPECT_LT((u.array() - 0.125).abs().maxCoeff(), 1e-15);
}

TEST(BornProbabilitiesTest, NoisyGhzZZZZ) {
  auto s = build_scheme(4);
  const RVector p = born_probabilities(make_state(parse_state_spec("ghz:4@F=0.8")), *s);
  const int zzzz = s->setting_index("ZZZZ");
  const double w = (0.8 - 1.0 / 16) / (1.0 - 1.0 / 16);
  for (int r = 0; r < 16; ++r) {
    const double expected = (r == 0 || r == 15) ? w / 2 + (1 - w) / 16 : (1 - w) / 16;
    EXPECT_NEAR(p(s->outcome_index(zzzz, r)), expected, 1e-14) << r;
  }
  EXPECT_NEAR(p(s->outcome_index(zzzz, 0)), 0.40666666666666667, 1e-14);
  EXPECT_NEAR(p(s->outcome_index(zzzz, 1)), 0.013333333333333333, 1e-14);
}

TEST(BornProbabilitiesTest, MatchesExplicitTraces) {
  std::mt19937_64 rng(23);
  auto s = build_scheme(3);
  const QuantumState rho = testing::random_state(3, rng);
  const RVector p = born_probabilities(rho, *s);
  for (std::size_t nu = 0; nu < static_cast<std::size_t>(s->num_outcomes()); ++nu) {
    EXPECT_NEAR(p(nu), s->projector(nu).inner(rho.op()), 1e-13);
  }
}

TEST(LinearInversionTest, NoiselessRoundTrip) {
  std::mt19937_64 rng(29);
  for (int n = 1; n <= 4; ++n) {
    auto s = build_scheme(n);
    for (int k = 0; k < 5; ++k) {
      const QuantumState rho = testing::random_state(n, rng);
      const HermitianOperator back = linear_inversion(born_probabilities(rho, *s), *s);
      EXPECT_LT(max_abs(back.matrix() - rho.matrix()), 1e-9);
    }
  }
}

TEST(LinearInversionTest, UnphysicalSingleQubit) {
  auto s = build_scheme(1);
  RVector f = RVector::Zero(6);
  for (int set = 0; set < 3; ++set) f(s->outcome_index(set, 0)) = 1.0;
  const HermitianOperator lin = linear_inversion(f, *s);
  const CMatrix expected = 0.5 * (CMatrix::Identity(2, 2) + pauli_string("X").matrix() +
                                  pauli_string("Y").matrix() + pauli_string("Z").matrix());
  EXPECT_LT(max_abs(lin.matrix() - expected), 1e-14);
  EXPECT_NEAR(eig_hermitian(lin).eigenvalues(0), (1 - std::sqrt(3.0)) / 2, 1e-14);
}

TEST(LinearInversionTest, UnitTraceForRandomFrequencies) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u;
  auto s = build_scheme(3);
  RVector f(s->num_outcomes());
  for (int set = 0; set < s->num_settings(); ++set) {
    auto block = f.segment(set * 8, 8);
    for (auto& x : block) x = u(rng);
    block /= block.sum();
  }
  EXPECT_NEAR(linear_inversion(f, *s).trace(), 1.0, 1e-12);
}

TEST(FrequencyDataTest, Validation) {
  std::vector<std::int64_t> counts{3, 1, 2, 2, 4, 0};
  const FrequencyData d = FrequencyData::FromCounts(counts, 3, 4);
  EXPECT_DOUBLE_EQ(d.frequencies()(0), 0.75);
  counts[3] = 1;
  try {
    FrequencyData::FromCounts(counts, 3, 4);
    FAIL() << "expected a count-sum error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("setting 1"), std::string::npos) << e.what();
  }
  RVector bad(2);
  bad << 0.5, 0.6;
  EXPECT_THROW(FrequencyData::FromFrequencies(bad, 1, 10), std::invalid_argument);
}

TEST(WalshHadamardTest, MatchesDefinition) {
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> expected(8, 0.0);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      expected[i] += (__builtin_popcount(i & j) % 2 ? -1.0 : 1.0) * v[j];
    }
  }
  walsh_hadamard(v);
  for (int i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(v[i], expected[i]);
}

}  // namespace
}  // namespace tomobias
