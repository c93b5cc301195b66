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

// Pauli-basis representation of states, observables and channels.
//
// Basis convention: every single-qubit basis element is a Pauli matrix
// divided by sqrt(2), so that Tr(e_i^dagger e_j) = delta_ij. Multi-qubit
// basis strings are enumerated in base 4 with digits I=0, X=1, Y=2, Z=3 and
// qubit 0 as the most significant digit. The same "qubit 0 slowest" order is
// used for computational-basis indices and Kronecker products everywhere in
// the library.

#include <Eigen/Dense>

#include <algorithm>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "qcut/errors.hpp"

namespace qcut {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Tolerance for structural identities (orthonormality, reconstruction).
inline constexpr double kStructuralTol = 1e-12;
/// Tolerance for equalities that go through a conjugation U rho U^dagger.
inline constexpr double kConjugationTol = 1e-10;

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(PauliAxis axis) {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  return kNames[static_cast<int>(axis)];
}

inline PauliAxis parse_pauli_axis(char c) {
  switch (c) {
    case 'I': case 'i': return PauliAxis::I;
    case 'X': case 'x': return PauliAxis::X;
    case 'Y': case 'y': return PauliAxis::Y;
    case 'Z': case 'z': return PauliAxis::Z;
    default: break;
  }
  throw ValidationError(std::string("unknown Pauli label '") + c + "'");
}

inline PauliAxis parse_pauli_axis(const std::string& s) {
  if (s.size() != 1) throw ValidationError("unknown Pauli label '" + s + "'");
  return parse_pauli_axis(s[0]);
}

inline const Eigen::Matrix2cd& pauli_matrix(PauliAxis axis) {
  static const Eigen::Matrix2cd kMatrices[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return kMatrices[static_cast<int>(axis)];
}

template <typename Derived1, typename Derived2>
auto kron(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Number of qubits n such that dim == 2^n; throws for other dimensions.
inline int qubits_for_dimension(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if (dim < 2 || (Eigen::Index{1} << n) != dim) {
    std::ostringstream msg;
    msg << "matrix dimension " << dim << " is not a power of two >= 2";
    throw ValidationError(msg.str());
  }
  return n;
}

/// Base-4 digit of `index` belonging to `qubit` (qubit 0 most significant).
inline PauliAxis pauli_digit(std::size_t index, int qubit, int n_qubits) {
  return static_cast<PauliAxis>((index >> (2 * (n_qubits - 1 - qubit))) & 3U);
}

inline std::string pauli_string_label(std::size_t index, int n_qubits) {
  std::string s;
  for (int q = 0; q < n_qubits; ++q) s += to_char(pauli_digit(index, q, n_qubits));
  return s;
}

/// Unnormalized Pauli string as a dense matrix.
inline CMatrix pauli_string_matrix(std::size_t index, int n_qubits) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) out = kron(out, pauli_matrix(pauli_digit(index, q, n_qubits)));
  return out;
}

/// Normalized basis element e_index = (sigma_{j0} ⊗ ... ⊗ sigma_{jn-1}) / 2^{n/2}.
inline CMatrix pauli_basis_element(std::size_t index, int n_qubits) {
  return pauli_string_matrix(index, n_qubits) / std::pow(2.0, 0.5 * n_qubits);
}

/// Tr(P · M) for the unnormalized Pauli string P, in O(2^n) using the
/// one-nonzero-per-row structure of Pauli strings.
inline Complex pauli_string_trace(std::size_t index, int n_qubits, const CMatrix& m) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::size_t xmask = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const PauliAxis a = pauli_digit(index, q, n_qubits);
    if (a == PauliAxis::X || a == PauliAxis::Y) xmask |= std::size_t{1} << (n_qubits - 1 - q);
  }
  Complex acc = 0;
  for (std::size_t row = 0; row < dim; ++row) {
    Complex phase = 1;
    for (int q = 0; q < n_qubits; ++q) {
      const bool bit = (row >> (n_qubits - 1 - q)) & 1U;
      switch (pauli_digit(index, q, n_qubits)) {
        case PauliAxis::Y: phase *= bit ? Complex(0, 1) : Complex(0, -1); break;
        case PauliAxis::Z: if (bit) phase = -phase; break;
        default: break;
      }
    }
    const std::size_t col = row ^ xmask;
    acc += phase * m(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row));
  }
  return acc;
}

/// Real coefficient vector of a Hermitian operator in the normalized Pauli basis.
struct PauliVector {
  int n_qubits = 0;
  RVector coefficients;

  std::size_t size() const { return static_cast<std::size_t>(coefficients.size()); }
};

/// Real 4^n x 4^n matrix of a linear map on operators in the normalized
/// Pauli basis: entries(j, k) = Tr(e_j · Phi(e_k)).
struct PauliTransferMatrix {
  int n_qubits = 0;
  RMatrix entries;

  static PauliTransferMatrix identity(int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << (2 * n_qubits);
    return {n_qubits, RMatrix::Identity(d, d)};
  }

  /// Composition: (a * b) applies b first, then a.
  friend PauliTransferMatrix operator*(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
    if (a.n_qubits != b.n_qubits) throw ValidationError("PTM composition across different qubit counts");
    return {a.n_qubits, a.entries * b.entries};
  }

  PauliTransferMatrix& operator+=(const PauliTransferMatrix& other) {
    if (n_qubits != other.n_qubits) throw ValidationError("PTM sum across different qubit counts");
    entries += other.entries;
    return *this;
  }

  PauliVector apply(const PauliVector& v) const {
    if (v.n_qubits != n_qubits) throw ValidationError("PTM applied to a vector of different qubit count");
    return {n_qubits, entries * v.coefficients};
  }

  double max_abs_difference(const PauliTransferMatrix& other) const {
    if (n_qubits != other.n_qubits) throw ValidationError("PTM comparison across different qubit counts");
    return (entries - other.entries).cwiseAbs().maxCoeff();
  }
};

/// max_ij |(U^dagger U - I)_ij|
inline double unitarity_deviation(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

namespace detail {

// Builds the PTM of an arbitrary linear map given as a callable on 2^n x 2^n
// operators. Returns the complex entries so callers can decide how to treat
// an imaginary residue.
inline Eigen::MatrixXcd complex_ptm(int n_qubits, const std::function<CMatrix(const CMatrix&)>& map) {
  const std::size_t d = std::size_t{1} << (2 * n_qubits);
  const double norm = std::pow(2.0, -0.5 * n_qubits);
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    const CMatrix image = map(pauli_basis_element(k, n_qubits));
    for (std::size_t j = 0; j < d; ++j) {
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = norm * pauli_string_trace(j, n_qubits, image);
    }
  }
  return out;
}

}  // namespace detail

/// PTM of an arbitrary Hermiticity-preserving linear map. Throws
/// ValidationError when the map produces complex entries.
inline PauliTransferMatrix ptm_of_linear_map(int n_qubits, const std::function<CMatrix(const CMatrix&)>& map) {
  const Eigen::MatrixXcd c = detail::complex_ptm(n_qubits, map);
  const double residue = c.imag().cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, c.real().cwiseAbs().maxCoeff());
  if (residue > kStructuralTol * scale) {
    std::ostringstream msg;
    msg << "linear map is not Hermiticity-preserving (imaginary PTM residue " << residue << ")";
    throw ValidationError(msg.str());
  }
  return {n_qubits, c.real()};
}

/// PTM of rho -> L rho R^dagger.
inline PauliTransferMatrix ptm_of_general_map(const CMatrix& left, const CMatrix& right) {
  if (left.rows() != left.cols() || right.rows() != right.cols() || left.rows() != right.rows()) {
    std::ostringstream msg;
    msg << "general map needs two square matrices of equal size, got " << left.rows() << "x" << left.cols()
        << " and " << right.rows() << "x" << right.cols();
    throw ValidationError(msg.str());
  }
  const int n = qubits_for_dimension(left.rows());
  const CMatrix right_dag = right.adjoint();
  return ptm_of_linear_map(n, [&](const CMatrix& e) { return CMatrix(left * e * right_dag); });
}

/// PTM of rho -> U rho U^dagger for a k-qubit unitary, k in {1, 2}.
inline PauliTransferMatrix ptm_of_unitary(const CMatrix& u, int k) {
  if (k < 1 || k > 2) throw ValidationError("ptm_of_unitary supports 1- and 2-qubit unitaries only");
  const Eigen::Index dim = Eigen::Index{1} << k;
  if (u.rows() != dim || u.cols() != dim) {
    std::ostringstream msg;
    msg << "expected a " << dim << "x" << dim << " unitary, got " << u.rows() << "x" << u.cols();
    throw ValidationError(msg.str());
  }
  const double dev = unitarity_deviation(u);
  if (dev > kConjugationTol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max|U^dagger U - I| = " << dev;
    throw ValidationError(msg.str());
  }
  const CMatrix u_dag = u.adjoint();
  const Eigen::MatrixXcd c = detail::complex_ptm(k, [&](const CMatrix& e) { return CMatrix(u * e * u_dag); });
  const double residue = c.imag().cwiseAbs().maxCoeff();
  if (residue > kStructuralTol) {
    std::ostringstream msg;
    msg << "unitary PTM has imaginary residue " << residue;
    throw InternalError(msg.str());
  }
  return {k, c.real()};
}

/// Coefficients of a Hermitian operator (observable or unnormalized state).
inline PauliVector pauli_vector_of_operator(const CMatrix& op) {
  if (op.rows() != op.cols()) throw ValidationError("operator must be square");
  const int n = qubits_for_dimension(op.rows());
  const double herm = (op - op.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kConjugationTol) {
    std::ostringstream msg;
    msg << "operator is not Hermitian: max|A - A^dagger| = " << herm;
    throw ValidationError(msg.str());
  }
  const std::size_t d = std::size_t{1} << (2 * n);
  const double norm = std::pow(2.0, -0.5 * n);
  PauliVector v{n, RVector(static_cast<Eigen::Index>(d))};
  for (std::size_t j = 0; j < d; ++j) {
    v.coefficients(static_cast<Eigen::Index>(j)) = norm * pauli_string_trace(j, n, op).real();
  }
  return v;
}

/// Coefficients of a density matrix; validates Hermiticity, unit trace and
/// positivity.
inline PauliVector pauli_vector_of_density(const CMatrix& rho) {
  PauliVector v = pauli_vector_of_operator(rho);
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1, 0)) > kConjugationTol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i, expected 1";
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kConjugationTol) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw ValidationError(msg.str());
  }
  return v;
}

/// Inverse of pauli_vector_of_operator.
inline CMatrix operator_of_pauli_vector(const PauliVector& v) {
  const Eigen::Index dim = Eigen::Index{1} << v.n_qubits;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double c = v.coefficients(static_cast<Eigen::Index>(j));
    if (c != 0.0) out += c * pauli_basis_element(j, v.n_qubits);
  }
  return out;
}

/// <<O| S |rho>> = sum_jk O_j S_jk rho_k.
inline double expectation(const PauliVector& obs, const PauliTransferMatrix& channel, const PauliVector& state) {
  if (obs.n_qubits != channel.n_qubits || state.n_qubits != channel.n_qubits) {
    std::ostringstream msg;
    msg << "qubit count mismatch: observable " << obs.n_qubits << ", channel " << channel.n_qubits << ", state "
        << state.n_qubits;
    throw ValidationError(msg.str());
  }
  return obs.coefficients.dot(channel.entries * state.coefficients);
}

/// Kronecker product of PTMs; `a` acts on the lower-numbered qubits.
inline PauliTransferMatrix tensor(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  return {a.n_qubits + b.n_qubits, kron(a.entries, b.entries)};
}

inline PauliVector tensor(const PauliVector& a, const PauliVector& b) {
  RVector out(a.coefficients.size() * b.coefficients.size());
  for (Eigen::Index i = 0; i < a.coefficients.size(); ++i) {
    out.segment(i * b.coefficients.size(), b.coefficients.size()) = a.coefficients(i) * b.coefficients;
  }
  return {a.n_qubits + b.n_qubits, out};
}

}  // namespace qcut
