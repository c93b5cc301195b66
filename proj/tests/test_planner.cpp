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

#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qcut;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

CircuitIR qaoa(int p) {
  std::vector<double> beta, gamma;
  for (int l = 0; l < p; ++l) {
    beta.push_back(0.3 + 0.2 * l);
    gamma.push_back(0.2 + 0.5 * l);
  }
  return qaoa_example(6, 0, 3, p, beta, gamma);
}

}  // namespace

TEST_CASE("plan_cost examples", "[planner]") {
  const auto c = cluster_demo();
  CutSpec s;
  s.gate_cuts = {cluster_bridge_op(c)};
  CHECK(plan_cost(s, c) == 9.0);

  CutSpec w;
  w.wire_cuts = {{0, -1}, {1, -1}, {2, -1}, {3, -1}};
  CHECK(plan_cost(w, c) == 65536.0);

  CircuitIR e;
  e.n_qubits = 2;
  e.observable = pauli_observable("ZZ");
  e.ops = {{GateKind::EXP, {0, 1}, kPi / 8}};
  CutSpec g;
  g.gate_cuts = {0};
  CHECK_THAT(plan_cost(g, e), WithinAbs(std::pow(1 + std::sqrt(2.0), 2), 1e-12));
  CHECK(plan_cost(g, e, CostModel::cz_bound) == 9.0);
  CHECK(plan_cost({}, e) == 1.0);
}

TEST_CASE("QAOA costs scale as 9^p", "[planner]") {
  for (int p = 1; p <= 3; ++p) {
    const auto c = qaoa(p);
    CutSpec s;
    s.gate_cuts = c.flagged_ops();
    REQUIRE(s.ms() == p);
    CHECK(plan_cost(s, c, CostModel::cz_bound) == std::pow(9.0, p));
    CHECK(plan_cost(s, c) <= std::pow(9.0, p));
  }
  const auto c1 = qaoa(1);
  CutSpec s1;
  s1.gate_cuts = c1.flagged_ops();
  const auto alt = wire_cut_alternative(c1, s1);
  CHECK(alt.mt() == 4);
  CHECK(plan_cost(alt, c1) == 65536.0);
}

TEST_CASE("planner on the cluster topology", "[planner]") {
  const auto c = cluster_demo();
  SECTION("gate cut preferred") {
    const auto plan = plan_cuts(c, 2);
    REQUIRE(plan.feasible);
    CHECK(plan.spec.gate_cuts == std::vector<int>{cluster_bridge_op(c)});
    CHECK(plan.spec.mt() == 0);
    CHECK(plan.cost == 9.0);
    CHECK(plan.max_width <= 2);
  }
  SECTION("gate cuts disabled") {
    PlanOptions opt;
    opt.allow_gate = false;
    const auto plan = plan_cuts(c, 2, opt);
    REQUIRE(plan.feasible);
    CHECK(plan.spec.mt() == 1);
    CHECK(plan.cost == 16.0);
  }
  SECTION("fits without cuts") {
    const auto plan = plan_cuts(c, 4);
    CHECK(plan.feasible);
    CHECK(plan.spec.empty());
    CHECK(plan.cost == 1.0);
  }
  SECTION("infeasible") {
    PlanOptions opt;
    opt.allow_gate = false;
    opt.allow_wire = false;
    const auto plan = plan_cuts(c, 2, opt);
    CHECK_FALSE(plan.feasible);
    CHECK_THROWS_AS(plan_cuts(c, 0), ValidationError);
  }
}

TEST_CASE("property: planner matches brute force on small instances", "[planner][property]") {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 12 && seed < 400; ++seed) {
    RandomCircuitOptions opt;
    opt.n_qubits = 3 + static_cast<int>(seed % 2);
    opt.ops = 5;
    opt.two_qubit_fraction = 0.6;
    opt.projections = true;
    const auto c = random_circuit(opt, seed);
    const auto cands = cut_candidates(c);
    if (cands.size() > 12 || cands.empty()) continue;
    const int width = fragment_width(c, {});
    if (width < 2) continue;
    const int budget = width - 1;

    // brute force over every subset
    bool found = false;
    double best_cost = 0;
    std::vector<int> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cands.size()); ++mask) {
      std::vector<int> chosen;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        if (mask >> k & 1U) chosen.push_back(static_cast<int>(k));
      }
      const CutSpec spec = spec_from_candidates(cands, chosen);
      if (fragment_width(c, spec) > budget) continue;
      const double cost = plan_cost(spec, c);
      const double tol = 1e-12 * std::max(cost, best_cost);
      const bool better = !found || cost < best_cost - tol ||
                          (std::abs(cost - best_cost) <= tol &&
                           (chosen.size() < best.size() || (chosen.size() == best.size() && chosen < best)));
      if (better) {
        found = true;
        best_cost = cost;
        best = chosen;
      }
    }
    const auto plan = plan_cuts(c, budget);
    INFO("seed " << seed);
    REQUIRE(plan.feasible == found);
    if (found) {
      CHECK_THAT(plan.cost, WithinRel(best_cost, 1e-12));
      const CutSpec want = spec_from_candidates(cands, best);
      CHECK(plan.spec.gate_cuts == want.gate_cuts);
      CHECK(plan.spec.wire_cuts == want.wire_cuts);
    }
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("property: width guarantee and cost consistency", "[planner][property]") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    RandomCircuitOptions opt;
    opt.n_qubits = 4 + static_cast<int>(seed % 3);
    opt.ops = 10;
    opt.two_qubit_fraction = 0.4;
    const auto c = random_circuit(opt, seed);
    const int width = fragment_width(c, {});
    const int budget = std::max(1, width - 1);
    const auto plan = plan_cuts(c, budget);
    if (!plan.feasible) continue;
    const CutCircuit cc(c, plan.spec, budget);  // throws on any over-budget fragment
    for (const auto& f : cc.fragments().fragments) CHECK(f.width <= budget);
    double expect = 1;
    for (const auto& d : cc.decompositions()) expect *= d.gamma * d.gamma;
    CHECK_THAT(plan.cost, WithinRel(expect, 1e-12));
  }
}

TEST_CASE("evaluation cap truncates the search", "[planner]") {
  const auto c = qaoa(2);
  PlanOptions opt;
  opt.max_evaluations = 10;
  const auto plan = plan_cuts(c, 2, opt);
  CHECK(plan.truncated);
  CHECK(plan.evaluated == 10);
}
