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

// Exact references: dense simulation of the uncut circuit, and the exact
// term-weighted sum over every term selection of a cut circuit.

#include <bit>
#include <map>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/density.hpp"
#include "qcut/fragment.hpp"
#include "qcut/program.hpp"

namespace qcut {

/// Final (possibly unnormalized, if PROJ ops are present) state of the
/// uncut circuit.
inline DensityState simulate_circuit(const CircuitIR& c, int limit = kOracleQubitLimit) {
  validate(c);
  DensityState state = init_zero_state(c.n_qubits, limit);
  for (const Op& op : c.ops) {
    const CMatrix m = op_matrix(op);
    state.apply_map(m, m, op.qubits);
  }
  return state;
}

/// Expectation of an observable on a final state: Tr(P rho) for a Pauli
/// string, sum_y f(y) <y|rho|y> for a table.
inline double observable_expectation(const DensityState& state, const OutputFunction& f) {
  if (f.kind == OutputFunction::Kind::pauli) return pauli_string_expectation(state, f.paulis);
  double acc = 0;
  for (Eigen::Index y = 0; y < state.dim(); ++y) acc += f.table[static_cast<std::size_t>(y)] * state.matrix()(y, y).real();
  return acc;
}

/// <O_f> of the uncut circuit by direct dense simulation.
inline double exact_expectation(const CircuitIR& c) { return observable_expectation(simulate_circuit(c), c.observable); }

/// Value of a fragment's quasi-distribution under a Pauli-string observable.
inline double fragment_pauli_value(const ExactOutput& out, const OutputFunction& f) {
  std::size_t mask = 0;
  const std::size_t k = out.qubits.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (f.paulis[static_cast<std::size_t>(out.qubits[i])] != PauliAxis::I) mask |= std::size_t{1} << (k - 1 - i);
  }
  double acc = 0;
  for (std::size_t y = 0; y < out.distribution.size(); ++y) {
    acc += (std::popcount(y & mask) & 1 ? -1.0 : 1.0) * out.distribution[y];
  }
  return acc;
}

/// Exact evaluation of every term of a cut circuit with fragment results
/// cached per local selection.
class CutOracle {
 public:
  explicit CutOracle(const CutCircuit& cc) : cc_(cc), cache_(cc.fragment_count()) {}

  const ExactOutput& fragment_output(std::size_t f, const std::vector<int>& sel) {
    const std::uint64_t key = cc_.local_key(f, sel);
    auto it = cache_[f].find(key);
    if (it == cache_[f].end()) it = cache_[f].emplace(key, run_exact(cc_.instantiate(f, sel, false))).first;
    return it->second;
  }

  /// E over the term's fragment outputs of f(y), times all sign weights,
  /// without the coefficient.
  double term_value(const std::vector<int>& sel) {
    const OutputFunction& obs = cc_.circuit().observable;
    const std::size_t nf = cc_.fragment_count();
    if (obs.kind == OutputFunction::Kind::pauli) {
      double v = 1;
      for (std::size_t f = 0; f < nf; ++f) v *= fragment_pauli_value(fragment_output(f, sel), obs);
      return v;
    }
    std::vector<const ExactOutput*> outs;
    for (std::size_t f = 0; f < nf; ++f) outs.push_back(&fragment_output(f, sel));
    const int n = cc_.circuit().n_qubits;
    double acc = 0;
    // Joint enumeration over the fragments' output bits.
    std::vector<std::size_t> idx(nf, 0);
    while (true) {
      double p = 1;
      std::uint64_t y = 0;
      for (std::size_t f = 0; f < nf; ++f) {
        p *= outs[f]->distribution[idx[f]];
        const std::size_t k = outs[f]->qubits.size();
        for (std::size_t i = 0; i < k; ++i) {
          if ((idx[f] >> (k - 1 - i)) & 1U) y |= std::uint64_t{1} << (n - 1 - outs[f]->qubits[i]);
        }
      }
      if (p != 0) acc += p * obs.value(y, n);
      std::size_t f = 0;
      for (; f < nf; ++f) {
        if (++idx[f] < outs[f]->distribution.size()) break;
        idx[f] = 0;
      }
      if (f == nf) break;
    }
    return acc;
  }

  /// sum over all selections of coefficient * term value.
  double expectation() {
    double acc = 0;
    for (std::uint64_t i = 0; i < cc_.combinations(); ++i) {
      const auto sel = cc_.decode(i);
      acc += cc_.coefficient(sel) * term_value(sel);
    }
    return acc;
  }

 private:
  const CutCircuit& cc_;
  std::vector<std::map<std::uint64_t, ExactOutput>> cache_;
};

inline double exact_cut_expectation(const CutCircuit& cc) { return CutOracle(cc).expectation(); }

}  // namespace qcut
