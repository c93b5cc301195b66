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

// Demo and test workloads: the two-cluster circuit joined by a single CZ,
// the QAOA ring with one distant edge, and random circuits.

#include <cstdint>
#include <numbers>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/errors.hpp"
#include "qcut/rng.hpp"

namespace qcut {

namespace detail {

inline double random_angle(KeyedStream& rng) { return (2.0 * rng.uniform() - 1.0) * std::numbers::pi; }

inline void random_layer(CircuitIR& c, KeyedStream& rng, int first, int last) {
  for (int q = first; q <= last; ++q) {
    c.ops.push_back({GateKind::RY, {q}, random_angle(rng)});
    c.ops.push_back({GateKind::RZ, {q}, random_angle(rng)});
  }
}

}  // namespace detail

/// Two k-qubit clusters A = {0..k-1} and B = {k..2k-1} joined by one CZ
/// between qubits k-1 and k, with fixed random single-qubit layers.
///
/// Qubit 0 finishes with A's entangling chain, before qubit k starts, and
/// B starts while A is still running. Uncut, the circuit needs more than k
/// qubits even with reuse of measured-out qubits; cutting the bridge, or
/// cutting qubit k's wire right after the bridge, leaves two width-k
/// fragments. The bridge is flagged as the natural gate-cut candidate.
/// Observable: Z on every qubit.
inline CircuitIR cluster_demo(int k = 2, std::uint64_t seed = 1) {
  if (k < 2 || k > 6) throw ValidationError("cluster size must be between 2 and 6");
  KeyedStream rng(seed, 0xC1u, 0);
  CircuitIR c;
  c.n_qubits = 2 * k;
  detail::random_layer(c, rng, 0, k - 1);
  for (int q = 0; q + 1 < k; ++q) c.ops.push_back({GateKind::CZ, {q, q + 1}});
  c.ops.push_back({GateKind::RY, {k}, detail::random_angle(rng)});
  Op bridge{GateKind::CZ, {k - 1, k}};
  bridge.cut = true;
  c.ops.push_back(bridge);
  detail::random_layer(c, rng, k, 2 * k - 1);
  for (int q = k; q + 1 < 2 * k; ++q) c.ops.push_back({GateKind::CZ, {q, q + 1}});
  detail::random_layer(c, rng, k, 2 * k - 1);
  detail::random_layer(c, rng, 1, k - 1);
  c.observable.paulis.assign(static_cast<std::size_t>(2 * k), PauliAxis::Z);
  validate(c);
  return c;
}

/// Index of the bridging CZ in cluster_demo(k).
inline int cluster_bridge_op(const CircuitIR& c) {
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    if (c.ops[i].cut) return static_cast<int>(i);
  }
  throw ValidationError("circuit has no flagged op");
}

/// QAOA on a ring of n qubits with unit couplings plus the distant edge
/// (i, j): H on every qubit, then per layer l the ZZ rotations
/// exp(i gamma_l Z Z) on every ring edge and on (i, j), followed by
/// exp(i beta_l X) = RX(-2 beta_l) on every qubit. The distant edge is
/// flagged in each layer. Observable: Z_i Z_j.
inline CircuitIR qaoa_example(int n, int i, int j, int p, const std::vector<double>& beta,
                              const std::vector<double>& gamma) {
  if (n < 4) throw ValidationError("QAOA ring needs at least 4 qubits");
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ValidationError("long edge endpoints must be distinct ring qubits");
  const int d = std::abs(i - j);
  if (d == 1 || d == n - 1) throw ValidationError("long edge endpoints are adjacent on the ring");
  if (p < 0) throw ValidationError("layer count must be non-negative");
  if (static_cast<int>(beta.size()) != p || static_cast<int>(gamma.size()) != p) {
    throw ValidationError("beta and gamma need one value per layer");
  }
  CircuitIR c;
  c.n_qubits = n;
  for (int q = 0; q < n; ++q) c.ops.push_back({GateKind::H, {q}});
  for (int l = 0; l < p; ++l) {
    const double g = gamma[static_cast<std::size_t>(l)];
    for (int q = 0; q < n; ++q) {
      const int a = std::min(q, (q + 1) % n), b = std::max(q, (q + 1) % n);
      c.ops.push_back({GateKind::EXP, {a, b}, g, PauliAxis::Z, PauliAxis::Z});
    }
    Op edge{GateKind::EXP, {std::min(i, j), std::max(i, j)}, g, PauliAxis::Z, PauliAxis::Z};
    edge.cut = true;
    c.ops.push_back(edge);
    for (int q = 0; q < n; ++q) c.ops.push_back({GateKind::RX, {q}, -2.0 * beta[static_cast<std::size_t>(l)]});
  }
  c.observable.paulis.assign(static_cast<std::size_t>(n), PauliAxis::I);
  c.observable.paulis[static_cast<std::size_t>(i)] = PauliAxis::Z;
  c.observable.paulis[static_cast<std::size_t>(j)] = PauliAxis::Z;
  validate(c);
  return c;
}

struct RandomCircuitOptions {
  int n_qubits = 4;
  int ops = 20;
  double two_qubit_fraction = 0.3;
  bool projections = true;   // include PROJ ops
  bool random_observable = true;
};

/// Random circuit over the full gate set. The observable is a random Pauli
/// string (never all-identity) or Z on every qubit.
inline CircuitIR random_circuit(const RandomCircuitOptions& opt, std::uint64_t seed) {
  KeyedStream rng(seed, 0x5EEDu, 0);
  CircuitIR c;
  c.n_qubits = opt.n_qubits;
  static constexpr GateKind kSingle[] = {GateKind::H,  GateKind::S,  GateKind::SDG, GateKind::X, GateKind::Y,
                                         GateKind::Z,  GateKind::RX, GateKind::RY,  GateKind::RZ};
  const PauliAxis axes[] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
  for (int k = 0; k < opt.ops; ++k) {
    if (opt.n_qubits >= 2 && rng.uniform() < opt.two_qubit_fraction) {
      const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.n_qubits)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.n_qubits - 1)));
      if (b >= a) ++b;
      Op op{GateKind::CZ, {a, b}};
      switch (rng.below(opt.projections ? 4 : 3)) {
        case 0: op.gate = GateKind::CZ; break;
        case 1: op.gate = GateKind::CNOT; break;
        case 2:
          op.gate = GateKind::EXP;
          op.theta = detail::random_angle(rng);
          op.p1 = axes[rng.below(3)];
          op.p2 = axes[rng.below(3)];
          break;
        default:
          op.gate = GateKind::PROJ;
          op.p1 = axes[rng.below(3)];
          op.p2 = axes[rng.below(3)];
          break;
      }
      c.ops.push_back(op);
    } else {
      Op op{kSingle[rng.below(9)], {static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.n_qubits)))}};
      if (has_angle(op.gate)) op.theta = detail::random_angle(rng);
      c.ops.push_back(op);
    }
  }
  c.observable.paulis.assign(static_cast<std::size_t>(opt.n_qubits), PauliAxis::Z);
  if (opt.random_observable) {
    const PauliAxis all[] = {PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    bool nontrivial = false;
    for (auto& a : c.observable.paulis) {
      a = all[rng.below(4)];
      nontrivial |= a != PauliAxis::I;
    }
    if (!nontrivial) c.observable.paulis[0] = PauliAxis::Z;
  }
  validate(c);
  return c;
}

}  // namespace qcut
