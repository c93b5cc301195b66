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

#include <cmath>
#include <numbers>

#include "qcut/pauli.hpp"

namespace qcut::gates {

inline CMatrix identity(int n_qubits = 1) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return CMatrix::Identity(d, d);
}

inline CMatrix pauli(PauliAxis a) { return pauli_matrix(a); }

inline CMatrix hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return (Eigen::Matrix2cd() << s, s, s, -s).finished();
}

inline CMatrix phase_s() { return (Eigen::Matrix2cd() << 1, 0, 0, Complex(0, 1)).finished(); }
inline CMatrix phase_sdg() { return (Eigen::Matrix2cd() << 1, 0, 0, Complex(0, -1)).finished(); }

/// exp(-i theta A / 2) for A in {X, Y, Z}.
inline CMatrix rotation(PauliAxis a, double theta) {
  return std::cos(theta / 2) * identity() - Complex(0, 1) * std::sin(theta / 2) * pauli(a);
}

/// exp(i sign pi A / 4) = (I + i sign A) / sqrt(2): the +-pi/2 rotation about A.
inline CMatrix quarter_rotation(PauliAxis a, int sign) {
  return (identity() + Complex(0, sign) * pauli(a)) / std::numbers::sqrt2;
}

/// exp(i theta A1 ⊗ A2) = cos(theta) I + i sin(theta) A1 ⊗ A2, valid because (A1 ⊗ A2)^2 = I.
inline CMatrix exp_pauli_pair(double theta, PauliAxis a1, PauliAxis a2) {
  return std::cos(theta) * identity(2) + Complex(0, std::sin(theta)) * kron(pauli(a1), pauli(a2));
}

/// (I + A1 ⊗ A2) / 2, the projector onto the +1 eigenspace of A1 ⊗ A2.
inline CMatrix pair_projector(PauliAxis a1, PauliAxis a2) {
  return 0.5 * (identity(2) + kron(pauli(a1), pauli(a2)));
}

/// (I + alpha A) / 2.
inline CMatrix axis_projector(PauliAxis a, int alpha) { return 0.5 * (identity() + double(alpha) * pauli(a)); }

inline CMatrix cz() {
  CMatrix m = identity(2);
  m(3, 3) = -1;
  return m;
}

/// Control on the first (more significant) qubit.
inline CMatrix cnot() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

}  // namespace qcut::gates
