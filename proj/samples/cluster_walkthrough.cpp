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

// Walkthrough: cut a 4-qubit circuit made of two 2-qubit clusters joined by
// one CZ, first through the gate and then through a wire, and estimate
// <ZZZZ> with 2-qubit fragments.

#include <cstdio>

#include "qcut/qcut.hpp"

int main() {
  using namespace qcut;

  const CircuitIR circuit = cluster_demo(2, 1);
  const int bridge = cluster_bridge_op(circuit);
  const double exact = exact_expectation(circuit);
  std::printf("uncut: %d qubits, %zu ops, <ZZZZ> = %.6f, width with reuse %d\n", circuit.n_qubits,
              circuit.ops.size(), exact, fragment_width(circuit, CutSpec{}));

  CutSpec gate;
  gate.gate_cuts = {bridge};
  CutSpec wire;
  wire.wire_cuts = {{circuit.ops[static_cast<std::size_t>(bridge)].qubits[1], bridge}};

  for (const auto& [name, spec] : {std::pair{"gate cut", gate}, std::pair{"wire cut", wire}}) {
    const CutCircuit cc(circuit, spec, 2);
    const auto& d = cc.decompositions().front();
    std::printf("\n%s: %zu terms, gamma %.3g, residual %.1e, %zu fragments of width <= %d\n", name, d.size(),
                d.gamma, verify_cut(d), cc.fragment_count(), cc.fragments().max_width);

    // every term evaluated exactly, then summed with its coefficient
    std::printf("  oracle sum over terms   %.6f\n", exact_cut_expectation(cc));

    const SampleBudget budget = sample_budget(spec.ms(), spec.mt(), 0.1, 0.05);
    SampleOptions opt;
    opt.seed = 7;
    const auto mc = run_monte_carlo(cc, budget.n, opt);
    std::printf("  Monte Carlo, N = %-6llu %.6f +/- %.4f\n", static_cast<unsigned long long>(budget.n),
                mc.estimate.mean, mc.estimate.std_error);

    const auto al = run_equal_allocation(cc, 60000, opt);
    std::printf("  equal allocation, N = %llu: %.6f, variance %.3g (N * variance %.3g)\n",
                static_cast<unsigned long long>(al.estimate.shots), al.estimate.mean, al.estimate.variance,
                al.estimate.variance * static_cast<double>(al.estimate.shots));
  }
  return 0;
}
