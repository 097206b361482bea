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

#ifndef TOMOBIAS_TESTS_TEST_UTIL_H_
#define TOMOBIAS_TESTS_TEST_UTIL_H_

#include <random>

#include "tomobias/operator.h"

namespace tomobias::testing {

inline CMatrix random_complex(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline HermitianOperator random_hermitian(int n, std::mt19937_64& rng) {
  const CMatrix a = random_complex(1 << n, rng);
  return HermitianOperator(CMatrix(0.5 * (a + a.adjoint())));
}

/// Ginibre state G G^dag / tr; full rank almost surely.
inline QuantumState random_state(int n, std::mt19937_64& rng) {
  const CMatrix g = random_complex(1 << n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QuantumState(HermitianOperator(CMatrix(0.5 * (rho + rho.adjoint()))));
}

inline CVector random_pure(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVector v(1 << n);
  for (auto& x : v) x = Complex(normal(rng), normal(rng));
  return v.normalized();
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace tomobias::testing

#endif  // TOMOBIAS_TESTS_TEST_UTIL_H_
