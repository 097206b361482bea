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

#include "tomobias/states.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tomobias/functionals.h"

namespace tomobias {
namespace {

TEST(StateSpecTest, Parse) {
  const StateSpec s = parse_state_spec("ghz:4@F=0.8");
  EXPECT_EQ(s.family, StateFamily::kGhz);
  EXPECT_EQ(s.n_qubits, 4);
  EXPECT_DOUBLE_EQ(s.target_fidelity, 0.8);
  EXPECT_EQ(s.to_string(), "ghz:4@F=0.8");
  EXPECT_EQ(parse_state_spec(s.to_string()).target_fidelity, 0.8);
  EXPECT_THROW(parse_state_spec("ghz:4@F=1.5"), std::invalid_argument);
  EXPECT_THROW(parse_state_spec("ghz:4@F=0.05"), std::invalid_argument);
  EXPECT_THROW(parse_state_spec("bogus:4@F=0.8"), std::invalid_argument);
  EXPECT_THROW(parse_state_spec("ghz:0@F=0.8"), std::invalid_argument);
}

TEST(MakeStateTest, PureGhz) {
  const QuantumState rho = make_state(parse_state_spec("ghz:4@F=1"));
  const CMatrix& m = rho.matrix();
  EXPECT_NEAR(m(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(15, 15).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(0, 15).real(), 0.5, 1e-15);
  EXPECT_NEAR(m.cwiseAbs().sum(), 2.0, 1e-14);
}

TEST(MakeStateTest, NoisyGhzWeight) {
  const StateSpec s = parse_state_spec("ghz:4@F=0.8");
  const double p = (0.8 - 1.0 / 16) / (1.0 - 1.0 / 16);
  EXPECT_NEAR(s.noise_weight(), p, 1e-15);
  EXPECT_NEAR(p, 0.78666666666666667, 1e-15);
  const QuantumState rho = make_state(s);
  EXPECT_NEAR(fidelity_pure(rho.op(), ghz_vector(4)), 0.8, 1e-12);
}

TEST(MakeStateTest, FamiliesReproduceFidelity) {
  for (const char* text : {"w:3@F=0.7", "sep:4@F=0.8", "ghz:2@F=0.9", "smolin@F=0.6"}) {
    const StateSpec s = parse_state_spec(text);
    const QuantumState rho = make_state(s);
    EXPECT_NEAR(rho.op().trace(), 1.0, 1e-12) << text;
    const double f = uhlmann_fidelity(rho.matrix(), target_state(s.family, s.n_qubits).matrix());
    EXPECT_NEAR(f, s.target_fidelity, 1e-12) << text;
  }
}

TEST(MakeStateTest, SmolinClosedForm) {
  // F = p + (1 - p)/4 for p*smolin + (1-p)*1/16.
  for (double f : {0.3, 0.6, 0.95}) {
    StateSpec s = parse_state_spec("smolin@F=0.6");
    s.target_fidelity = f;
    EXPECT_NEAR(s.noise_weight(), (f - 0.25) / 0.75, 1e-10);
  }
  EXPECT_THROW(parse_state_spec("smolin@F=0.2"), std::invalid_argument);
}

TEST(MakeStateTest, ProductSepNoiselessPartIsSeparable) {
  const QuantumState target = target_state(StateFamily::kProductSep, 4);
  const std::vector<int> a{0, 1};
  EXPECT_NEAR(negativity(target.op(), a), 0.0, 1e-12);
}

TEST(TargetVectorTest, Shapes) {
  const CVector w = w_vector(3);
  EXPECT_NEAR(std::norm(w(1)), 1.0 / 3, 1e-15);
  EXPECT_NEAR(std::norm(w(2)), 1.0 / 3, 1e-15);
  EXPECT_NEAR(std::norm(w(4)), 1.0 / 3, 1e-15);
  EXPECT_FALSE(target_vector(StateFamily::kSmolin, 4).has_value());
}

}  // namespace
}  // namespace tomobias
