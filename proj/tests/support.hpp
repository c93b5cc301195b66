// Copyright 2026 The qcut Authors
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

#pragma once

// Shared random-instance helpers for the test suite.

#include <cmath>
#include <numbers>

#include "qcut/qcut.hpp"

namespace qcut::testing {

inline double gaussian(KeyedStream& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline CMatrix ginibre(int dim, KeyedStream& rng) {
  CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gaussian(rng), gaussian(rng));
  return g;
}

// Haar-distributed unitary via QR with phase correction.
inline CMatrix random_unitary(int n_qubits, KeyedStream& rng) {
  const int dim = 1 << n_qubits;
  Eigen::HouseholderQR<CMatrix> qr(ginibre(dim, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline CMatrix random_density(int n_qubits, KeyedStream& rng) {
  const int dim = 1 << n_qubits;
  const CMatrix g = ginibre(dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return CMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace qcut::testing
