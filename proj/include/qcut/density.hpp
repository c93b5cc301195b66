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

// Dense density-matrix simulator. Qubit q maps to bit (n - 1 - q) of a
// computational-basis index, so qubit 0 is the most significant bit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcut/errors.hpp"
#include "qcut/gates.hpp"
#include "qcut/pauli.hpp"
#include "qcut/rng.hpp"

namespace qcut {

/// Widest state the closed-form (oracle) mode will build.
inline constexpr int kOracleQubitLimit = 12;
/// Widest state a per-shot sampling run will build.
inline constexpr int kShotQubitLimit = 8;

class DensityState {
 public:
  DensityState() = default;
  DensityState(int n_qubits, CMatrix rho) : n_(n_qubits), rho_(std::move(rho)) {
    if (rho_.rows() != (Eigen::Index{1} << n_) || rho_.cols() != rho_.rows()) {
      throw ValidationError("density matrix shape does not match qubit count");
    }
  }

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }
  Complex trace() const { return rho_.trace(); }

  /// rho <- M rho, M acting on `targets` (targets[0] is the most significant
  /// qubit of M's index).
  void apply_left(const CMatrix& m, std::span<const int> targets) {
    const Layout lay = layout(targets);
    const Eigen::Index d = dim();
    Complex* data = rho_.data();
    std::array<Complex, 4> v{};
    for (Eigen::Index c = 0; c < d; ++c) {
      Complex* col = data + c * d;
      for (std::size_t base = 0; base < static_cast<std::size_t>(d); ++base) {
        if (base & lay.mask) continue;
        for (std::size_t a = 0; a < lay.sub; ++a) v[a] = col[base | lay.offsets[a]];
        for (std::size_t a = 0; a < lay.sub; ++a) {
          Complex acc = 0;
          for (std::size_t b = 0; b < lay.sub; ++b) acc += m(a, b) * v[b];
          col[base | lay.offsets[a]] = acc;
        }
      }
    }
  }

  /// rho <- rho M^dagger.
  void apply_right_adjoint(const CMatrix& m, std::span<const int> targets) {
    const Layout lay = layout(targets);
    const Eigen::Index d = dim();
    Complex* data = rho_.data();
    std::array<Complex*, 4> cols{};
    std::array<Complex, 4> v{};
    for (std::size_t base = 0; base < static_cast<std::size_t>(d); ++base) {
      if (base & lay.mask) continue;
      for (std::size_t a = 0; a < lay.sub; ++a) cols[a] = data + static_cast<Eigen::Index>(base | lay.offsets[a]) * d;
      for (Eigen::Index r = 0; r < d; ++r) {
        for (std::size_t b = 0; b < lay.sub; ++b) v[b] = cols[b][r];
        for (std::size_t a = 0; a < lay.sub; ++a) {
          Complex acc = 0;
          for (std::size_t b = 0; b < lay.sub; ++b) acc += std::conj(m(a, b)) * v[b];
          cols[a][r] = acc;
        }
      }
    }
  }

  /// rho <- L rho R^dagger.
  void apply_map(const CMatrix& left, const CMatrix& right, std::span<const int> targets) {
    apply_left(left, targets);
    apply_right_adjoint(right, targets);
  }

  void conjugate(const CMatrix& u, std::span<const int> targets) { apply_map(u, u, targets); }

  /// Traces out `target` and replaces it with |0><0|.
  void reset(int target) {
    check_target(target);
    const std::size_t bit = std::size_t{1} << (n_ - 1 - target);
    const Eigen::Index d = dim();
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) {
        const auto rr = static_cast<std::size_t>(r), cc = static_cast<std::size_t>(c);
        if ((rr & bit) || (cc & bit)) continue;
        rho_(r, c) += rho_(static_cast<Eigen::Index>(rr | bit), static_cast<Eigen::Index>(cc | bit));
      }
    }
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) {
        if ((static_cast<std::size_t>(r) & bit) || (static_cast<std::size_t>(c) & bit)) rho_(r, c) = 0;
      }
    }
  }

  void scale(double s) { rho_ *= s; }

  /// Probability weight of computational outcome `bit` on `target` (not renormalized).
  double z_weight(int target, int bit) const {
    check_target(target);
    const std::size_t mask = std::size_t{1} << (n_ - 1 - target);
    double acc = 0;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if (((static_cast<std::size_t>(i) & mask) != 0) == (bit != 0)) acc += rho_(i, i).real();
    }
    return acc;
  }

  /// Zeroes every entry whose row or column disagrees with `bit` on `target`.
  void project_z(int target, int bit) {
    check_target(target);
    const std::size_t mask = std::size_t{1} << (n_ - 1 - target);
    for (Eigen::Index c = 0; c < dim(); ++c) {
      for (Eigen::Index r = 0; r < dim(); ++r) {
        const bool rb = (static_cast<std::size_t>(r) & mask) != 0;
        const bool cb = (static_cast<std::size_t>(c) & mask) != 0;
        if (rb != (bit != 0) || cb != (bit != 0)) rho_(r, c) = 0;
      }
    }
  }

  void check_target(int target) const {
    if (target < 0 || target >= n_) {
      std::ostringstream msg;
      msg << "qubit " << target << " out of range for a " << n_ << "-qubit state";
      throw ValidationError(msg.str());
    }
  }

 private:
  struct Layout {
    std::size_t mask = 0;
    std::size_t sub = 1;
    std::array<std::size_t, 4> offsets{};
  };

  Layout layout(std::span<const int> targets) const {
    if (targets.empty() || targets.size() > 2) throw ValidationError("gates act on one or two qubits");
    Layout lay;
    lay.sub = std::size_t{1} << targets.size();
    for (int t : targets) {
      check_target(t);
      const std::size_t bit = std::size_t{1} << (n_ - 1 - t);
      if (lay.mask & bit) throw ValidationError("target qubits overlap");
      lay.mask |= bit;
    }
    const std::size_t k = targets.size();
    for (std::size_t a = 0; a < lay.sub; ++a) {
      std::size_t off = 0;
      for (std::size_t m = 0; m < k; ++m) {
        if ((a >> (k - 1 - m)) & 1U) off |= std::size_t{1} << (n_ - 1 - targets[m]);
      }
      lay.offsets[a] = off;
    }
    return lay;
  }

  int n_ = 0;
  CMatrix rho_;
};

/// |0...0><0...0| on n qubits; `limit` is the simulator width in force.
inline DensityState init_zero_state(int n_qubits, int limit = kOracleQubitLimit) {
  if (n_qubits < 1 || n_qubits > limit) {
    std::ostringstream msg;
    msg << "cannot allocate a " << n_qubits << "-qubit state (limit " << limit << ")";
    throw ConfigurationError(msg.str());
  }
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  CMatrix rho = CMatrix::Zero(d, d);
  rho(0, 0) = 1;
  return DensityState(n_qubits, std::move(rho));
}

inline DensityState apply_unitary(DensityState state, const CMatrix& u, const std::vector<int>& targets) {
  const Eigen::Index expect = Eigen::Index{1} << targets.size();
  if (u.rows() != expect || u.cols() != expect) {
    std::ostringstream msg;
    msg << "unitary of size " << u.rows() << "x" << u.cols() << " does not match " << targets.size() << " target(s)";
    throw ValidationError(msg.str());
  }
  const double dev = unitarity_deviation(u);
  if (dev > kConjugationTol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max|U^dagger U - I| = " << dev;
    throw ValidationError(msg.str());
  }
  state.conjugate(u, targets);
  return state;
}

struct PostselectedBranch {
  DensityState branch;  // P_alpha rho P_alpha, trace = probability
  double probability = 0;
};

/// Unnormalized branch ((I + alpha A)/2) rho ((I + alpha A)/2) and its trace.
inline PostselectedBranch measure_pauli_postselected(DensityState state, PauliAxis axis, int target, int alpha) {
  if (axis == PauliAxis::I) throw ValidationError("measurement axis must be X, Y or Z");
  if (alpha != 1 && alpha != -1) throw ValidationError("postselected outcome must be +1 or -1");
  const CMatrix p = gates::axis_projector(axis, alpha);
  const int t[] = {target};
  state.apply_map(p, p, t);
  const double prob = state.trace().real();
  return {std::move(state), prob};
}

/// Tr(A_target rho) for a single-qubit Pauli.
inline double single_pauli_expectation(const DensityState& state, PauliAxis axis, int target) {
  state.check_target(target);
  std::size_t index = static_cast<std::size_t>(axis) << (2 * (state.n_qubits() - 1 - target));
  return pauli_string_trace(index, state.n_qubits(), state.matrix()).real();
}

struct SampledMeasurement {
  DensityState state;  // renormalized post-measurement state
  int sign = 1;
};

/// Born probabilities (p_plus, p_minus) of measuring `axis` on `target`,
/// relative to the state's current trace.
inline std::pair<double, double> pauli_outcome_probabilities(const DensityState& state, PauliAxis axis, int target) {
  const double tr = state.trace().real();
  const double a = single_pauli_expectation(state, axis, target);
  double p_plus = 0.5 * (tr + a) / tr;
  double p_minus = 0.5 * (tr - a) / tr;
  if (p_plus < -kStructuralTol || p_minus < -kStructuralTol) {
    std::ostringstream msg;
    msg << "negative Born probability (" << p_plus << ", " << p_minus << ")";
    throw InternalError(msg.str());
  }
  p_plus = std::clamp(p_plus, 0.0, 1.0);
  p_minus = std::clamp(p_minus, 0.0, 1.0);
  return {p_plus, p_minus};
}

/// Draws alpha with probability p_alpha and returns the renormalized branch.
/// An outcome with p_alpha == 0 is never drawn.
inline SampledMeasurement measure_pauli_sampled(DensityState state, PauliAxis axis, int target, KeyedStream& rng) {
  if (axis == PauliAxis::I) throw ValidationError("measurement axis must be X, Y or Z");
  const auto [p_plus, p_minus] = pauli_outcome_probabilities(state, axis, target);
  const int sign = (p_minus <= 0.0 || rng.uniform() < p_plus) ? 1 : -1;
  const CMatrix p = gates::axis_projector(axis, sign);
  const int t[] = {target};
  state.apply_map(p, p, t);
  state.scale(1.0 / state.trace().real());
  return {std::move(state), sign};
}

/// Samples a computational-basis bit on `target`, collapsing and renormalizing.
inline int sample_z(DensityState& state, int target, KeyedStream& rng) {
  const double w0 = state.z_weight(target, 0);
  const double w1 = state.z_weight(target, 1);
  if (w0 < -kStructuralTol || w1 < -kStructuralTol) throw InternalError("negative computational-basis weight");
  const double total = std::max(w0, 0.0) + std::max(w1, 0.0);
  const int bit = (w1 <= 0.0 || rng.uniform() * total < std::max(w0, 0.0)) ? 0 : 1;
  state.project_z(target, bit);
  state.scale(1.0 / (bit ? w1 : w0));
  return bit;
}

/// Tr(P rho) for a Pauli string over all qubits of the state (qubit 0 first).
inline double pauli_string_expectation(const DensityState& state, const std::vector<PauliAxis>& paulis) {
  if (static_cast<int>(paulis.size()) != state.n_qubits()) throw ValidationError("Pauli string length mismatch");
  std::size_t index = 0;
  for (PauliAxis a : paulis) index = (index << 2) | static_cast<std::size_t>(a);
  return pauli_string_trace(index, state.n_qubits(), state.matrix()).real();
}

/// Diagonal of rho marginalized onto `qubits` (qubits[0] most significant);
/// signed when rho is a signed operator.
inline std::vector<double> marginal_diagonal(const DensityState& state, const std::vector<int>& qubits) {
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  const int n = state.n_qubits();
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    std::size_t key = 0;
    for (int q : qubits) key = (key << 1) | ((static_cast<std::size_t>(i) >> (n - 1 - q)) & 1U);
    out[key] += state.matrix()(i, i).real();
  }
  return out;
}

}  // namespace qcut
