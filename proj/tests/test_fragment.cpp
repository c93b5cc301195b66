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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qcut;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

CutSpec gate_spec(int op) {
  CutSpec s;
  s.gate_cuts = {op};
  return s;
}

CutSpec wire_spec(int qubit, int after) {
  CutSpec s;
  s.wire_cuts = {{qubit, after}};
  return s;
}

// Random spec with at most two cuts, mixing gate and wire cuts.
CutSpec random_spec(const CircuitIR& c, KeyedStream& rng) {
  CutSpec s;
  std::vector<int> two;
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    if (c.ops[i].qubits.size() == 2) two.push_back(static_cast<int>(i));
  }
  const int cuts = 1 + static_cast<int>(rng.below(2));
  for (int k = 0; k < cuts; ++k) {
    if (!two.empty() && rng.uniform() < 0.5) {
      const int op = two[rng.below(two.size())];
      if (std::find(s.gate_cuts.begin(), s.gate_cuts.end(), op) == s.gate_cuts.end()) s.gate_cuts.push_back(op);
    } else {
      const WireCut w{static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n_qubits))),
                      static_cast<int>(rng.below(c.ops.size() + 1)) - 1};
      if (std::find(s.wire_cuts.begin(), s.wire_cuts.end(), w) == s.wire_cuts.end()) s.wire_cuts.push_back(w);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("cluster topology fragments", "[fragment]") {
  const auto c = cluster_demo(2, 1);
  const int bridge = cluster_bridge_op(c);
  SECTION("uncut") {
    const auto fs = fragment(c, {});
    CHECK(fs.fragments.size() == 1);
    CHECK(fs.fragments[0].width_no_reuse == 4);
    CHECK(fs.fragments[0].output_qubits.size() == 4);
  }
  SECTION("bridge gate cut") {
    const auto fs = fragment(c, gate_spec(bridge));
    REQUIRE(fs.fragments.size() == 2);
    CHECK(fs.fragments[0].width == 2);
    CHECK(fs.fragments[1].width == 2);
    CHECK(fs.max_width == 2);
  }
  SECTION("wire cut after the bridge") {
    const auto fs = fragment(c, wire_spec(2, bridge));
    REQUIRE(fs.fragments.size() == 2);
    CHECK(fs.fragments[0].width == 2);
    CHECK(fs.fragments[1].width == 2);
    CHECK(fs.fragments[0].width_no_reuse == 3);
  }
  SECTION("budget enforcement") {
    CHECK_THROWS_AS(fragment(c, {}, 2), ConfigurationError);
    CHECK_THROWS_WITH(fragment(c, {}, 2), ContainsSubstring("budget is 2"));
    CHECK_NOTHROW(fragment(c, gate_spec(bridge), 2));
  }
  SECTION("non-cuttable op") {
    CHECK_THROWS_AS(fragment(c, gate_spec(0)), ValidationError);
  }
}

TEST_CASE("cut endpoints pair off with the spec", "[fragment]") {
  const auto c = cluster_demo(3, 4);
  CutSpec s = gate_spec(cluster_bridge_op(c));
  s.wire_cuts = {{0, 0}, {4, -1}};
  const auto fs = fragment(c, s);
  std::vector<int> endpoints(static_cast<std::size_t>(s.total()), 0);
  for (const auto& f : fs.fragments) {
    for (const auto& ti : f.no_reuse.code) {
      if (const auto* cs = std::get_if<CutSlotInstr>(&ti)) ++endpoints[static_cast<std::size_t>(cs->cut)];
    }
  }
  for (int e : endpoints) CHECK(e == 2);
  std::set<int> outputs;
  for (const auto& f : fs.fragments) outputs.insert(f.output_qubits.begin(), f.output_qubits.end());
  CHECK(outputs.size() == static_cast<std::size_t>(c.n_qubits));
}

TEST_CASE("programs: shots and exact outputs", "[program]") {
  FragmentProgram p;
  p.width = 1;
  p.circuit_qubits = 1;
  p.code = {MeasureOutputInstr{0, 0}};
  for (int i = 0; i < 50; ++i) {
    KeyedStream rng(3, 0, static_cast<std::uint64_t>(i));
    CHECK(run_shot(p, rng).y == 0);
  }

  FragmentProgram m;
  m.width = 1;
  m.circuit_qubits = 1;
  m.code = {GateInstr{gates::hadamard(), {0}}, SignMeasureInstr{PauliAxis::Z, 0}};
  int plus = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    KeyedStream rng(4, 0, static_cast<std::uint64_t>(i));
    const auto out = run_shot(m, rng);
    REQUIRE(out.cut_signs.size() == 1);
    plus += out.cut_signs[0] == 1;
  }
  CHECK(std::abs(plus / double(n) - 0.5) < 5 * std::sqrt(0.25 / n));

  KeyedStream a(8, 1, 2), b(8, 1, 2);
  const auto oa = run_shot(m, a), ob = run_shot(m, b);
  CHECK(oa.cut_signs == ob.cut_signs);

  // a postselection with zero probability kills the shot
  FragmentProgram dead;
  dead.width = 1;
  dead.circuit_qubits = 1;
  dead.code = {ProjectInstr{gates::axis_projector(PauliAxis::Z, -1), {0}}, SignMeasureInstr{PauliAxis::X, 0},
               MeasureOutputInstr{0, 0}};
  KeyedStream r(1, 1, 1);
  const auto od = run_shot(dead, r);
  CHECK(od.weight == 0.0);
  CHECK(od.cut_signs == std::vector<int>{1});

  const auto ex = run_exact(m);
  CHECK(ex.qubits.empty());
  REQUIRE(ex.distribution.size() == 1);
  CHECK_THAT(ex.distribution[0], WithinAbs(0, 1e-14));

  FragmentProgram reused = p;
  reused.code.push_back(GateInstr{gates::hadamard(), {0}});
  CHECK_THROWS_AS(run_exact(reused), InternalError);
}

TEST_CASE("property: fragmentation soundness on random circuits", "[fragment][property]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    KeyedStream rng(seed, 77, 0);
    RandomCircuitOptions opt;
    opt.n_qubits = 2 + static_cast<int>(rng.below(5));  // 2..6
    opt.ops = 8 + static_cast<int>(rng.below(10));
    const auto c = random_circuit(opt, seed);
    const auto spec = random_spec(c, rng);
    INFO("seed " << seed << " n " << c.n_qubits << " cuts " << spec.total());
    const CutCircuit cc(c, spec);
    CHECK_THAT(exact_cut_expectation(cc), WithinAbs(exact_expectation(c), 1e-9));
    for (const auto& f : cc.fragments().fragments) {
      CHECK(f.width <= f.width_no_reuse);
      CHECK(f.width <= cc.fragments().max_width);
    }
  }
}

TEST_CASE("property: reuse programs sample the no-reuse distribution", "[fragment][property]") {
  const auto c = cluster_demo(2, 3);
  const CutCircuit cc(c, wire_spec(2, cluster_bridge_op(c)));
  REQUIRE(cc.fragments().fragments[0].width < cc.fragments().fragments[0].width_no_reuse);
  for (int t : {2, 5, 7}) {
    const std::vector<int> sel = {t};
    for (std::size_t f = 0; f < cc.fragment_count(); ++f) {
      const auto exact = run_exact(cc.instantiate(f, sel, false));
      const auto prog = cc.instantiate(f, sel, true);
      // expectation of sign * parity over the fragment's outputs
      const double want = fragment_pauli_value(exact, c.observable);
      const int n = 20000;
      double sum = 0;
      for (int i = 0; i < n; ++i) {
        KeyedStream rng(17, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i));
        const auto out = run_shot(prog, rng);
        const int parity = std::popcount(out.y) & 1;
        sum += out.sign_product() * out.weight * (parity ? -1.0 : 1.0);
      }
      CHECK(std::abs(sum / n - want) < 5.0 / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("mixed-radix selection encoding", "[fragment]") {
  const auto c = cluster_demo(2, 1);
  CutSpec s = gate_spec(cluster_bridge_op(c));
  s.wire_cuts = {{0, 0}};
  const CutCircuit cc(c, s);
  CHECK(cc.combinations() == 48);
  for (std::uint64_t i = 0; i < cc.combinations(); ++i) CHECK(cc.encode(cc.decode(i)) == i);
  CHECK(cc.decode(47) == std::vector<int>{5, 7});
  CHECK_THAT(cc.magnitude_bound(), WithinAbs(12, 1e-12));
  CHECK_THAT(cc.magnitude_bound(true), WithinAbs(12, 1e-12));
}
