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
#include <numeric>

#include "budget_table.hpp"
#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qcut;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CutCircuit cluster_cut(bool wire, std::uint64_t seed = 1) {
  const auto c = cluster_demo(2, seed);
  CutSpec s;
  if (wire) {
    s.wire_cuts = {{2, cluster_bridge_op(c)}};
  } else {
    s.gate_cuts = {cluster_bridge_op(c)};
  }
  return CutCircuit(c, s);
}

}  // namespace

TEST_CASE("budget table", "[estimator]") {
  for (const auto& b : testing::kBudgetTable) {
    INFO("Ms " << b.ms << " Mt " << b.mt << " eps " << b.epsilon << " delta " << b.delta);
    CHECK(sample_budget(b.ms, b.mt, b.epsilon, b.delta).n == b.n);
  }
  CHECK(sample_budget(1, 1, 0.1, 0.05).magnitude == 12.0);
  CHECK(magnitude_budget(3.0, 0.1, 0.05).n == 4145);
  CHECK_THROWS_AS(sample_budget(0, 0, 0.1, 0.5), ValidationError);
  CHECK_THROWS_AS(sample_budget(0, 0, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(sample_budget(0, 0, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(sample_budget(-1, 0, 0.1, 0.1), ValidationError);
  CHECK_THROWS_AS(sample_budget(40, 0, 0.1, 0.1), ConfigurationError);
}

TEST_CASE("property: budget monotonicity", "[estimator][property]") {
  const double eps[] = {0.5, 0.2, 0.1, 0.05};
  const double del[] = {0.4, 0.1, 0.05, 0.01};
  for (int ms = 0; ms < 3; ++ms) {
    for (int mt = 0; mt < 3; ++mt) {
      for (double e : eps) {
        for (double d : del) {
          const auto n = sample_budget(ms, mt, e, d).n;
          CHECK(sample_budget(ms + 1, mt, e, d).n >= n);
          CHECK(sample_budget(ms, mt + 1, e, d).n >= n);
          CHECK(sample_budget(ms, mt, e / 2, d).n >= n);
          CHECK(sample_budget(ms, mt, e, d / 2).n >= n);
          CHECK(n >= 1);
        }
      }
    }
  }
}

TEST_CASE("empirical variance", "[estimator]") {
  CHECK(empirical_variance(std::vector<double>(10, 0.7)) == 0.0);
  std::vector<double> alt(100);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? -1.0 : 1.0;
  CHECK_THAT(empirical_variance(alt), WithinAbs(100.0 / 99.0, 1e-12));
  CHECK_THROWS_AS(empirical_variance(std::vector<double>{1.0}), ValidationError);
  CHECK_THROWS_AS(empirical_variance(std::vector<WeightedSample>{}), ValidationError);

  KeyedStream rng(5, 5, 5);
  std::vector<double> xs(1000);
  for (double& x : xs) x = 10 + testing::gaussian(rng);
  // naive two-pass reference
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  CHECK_THAT(empirical_variance(xs), WithinAbs(ss / (xs.size() - 1), 1e-12));
  std::vector<WeightedSample> ws;
  for (double x : xs) ws.push_back({{}, x});
  CHECK(empirical_variance(ws) == empirical_variance(xs));
}

TEST_CASE("zero-cut Monte Carlo", "[estimator]") {
  const CutCircuit cc(cluster_demo(), {});
  SampleOptions opt;
  opt.seed = 3;
  const auto r = run_monte_carlo(cc, 4000, opt);
  for (double v : r.values) CHECK(std::abs(v) <= 1.0);
  CHECK(r.magnitude_bound == 1.0);
  const double exact = exact_expectation(cc.circuit());
  CHECK(std::abs(r.estimate.mean - exact) < 5 * r.estimate.std_error + 1e-12);
}

TEST_CASE("property: unbiasedness of the term-weighted oracle sum", "[estimator][property]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (bool wire : {false, true}) {
      const auto cc = cluster_cut(wire, seed);
      CHECK_THAT(exact_cut_expectation(cc), WithinAbs(exact_expectation(cc.circuit()), 1e-10));
    }
  }
}

TEST_CASE("Monte Carlo agrees with the oracle", "[estimator]") {
  for (bool wire : {false, true}) {
    for (bool importance : {false, true}) {
      const auto cc = cluster_cut(wire);
      SampleOptions opt;
      opt.seed = 11;
      opt.importance = importance;
      const auto r = run_monte_carlo(cc, 20000, opt);
      const double exact = exact_expectation(cc.circuit());
      INFO("wire " << wire << " importance " << importance);
      CHECK(std::abs(r.estimate.mean - exact) < 5 * r.estimate.std_error);
      CHECK_THAT(r.magnitude_bound, WithinRel(wire ? 4.0 : 3.0, 1e-12));
      for (double v : r.values) CHECK(std::abs(v) <= r.magnitude_bound * (1 + 1e-9));
      CHECK(r.estimate.per_term.size() == cc.combinations());
    }
  }
}

TEST_CASE("equal allocation agrees with the oracle", "[estimator]") {
  for (bool wire : {false, true}) {
    const auto cc = cluster_cut(wire);
    SampleOptions opt;
    opt.seed = 21;
    const auto r = run_equal_allocation(cc, 24000, opt);
    CHECK(r.estimator == AllocationEstimator::factorized);
    CHECK(r.shots_per_term * cc.combinations() == r.estimate.shots);
    CHECK_FALSE(r.rounded);
    const double exact = exact_expectation(cc.circuit());
    CHECK(std::abs(r.estimate.mean - exact) < 5 * r.estimate.std_error);
  }
  const auto cc = cluster_cut(false);
  const auto r = run_equal_allocation(cc, 1001, {});
  CHECK(r.rounded);
  CHECK(r.shots_per_term == 167);
}

TEST_CASE("local allocation agrees with the oracle", "[estimator]") {
  for (bool wire : {false, true}) {
    const auto cc = cluster_cut(wire);
    SampleOptions opt;
    opt.seed = 5;
    const auto r = run_local_allocation(cc, 24000, opt);
    std::uint64_t units = 0;
    for (std::size_t f = 0; f < cc.fragment_count(); ++f) units += cc.local_combinations(f);
    CHECK(r.units.size() == units);
    CHECK(r.shots_per_unit * units == r.estimate.shots);
    const double exact = exact_expectation(cc.circuit());
    CHECK(std::abs(r.estimate.mean - exact) < 5 * r.estimate.std_error);
    for (const auto& u : r.units) {
      CHECK(u.count == r.shots_per_unit);
      CHECK(std::abs(u.mean) <= 1.0);
    }
  }
  auto c = cluster_demo();
  c.observable.kind = OutputFunction::Kind::table;
  c.observable.table.assign(16, 1.0);
  CutSpec s;
  s.gate_cuts = {cluster_bridge_op(c)};
  CHECK_THROWS_AS(run_local_allocation(CutCircuit(c, s), 100, {}), ValidationError);
}

TEST_CASE("local allocation of a deterministic circuit", "[estimator]") {
  CircuitIR c;
  c.n_qubits = 2;
  c.observable = pauli_observable("ZZ");
  c.ops = {{GateKind::CZ, {0, 1}}};
  CutSpec s;
  s.gate_cuts = {0};
  const auto r = run_local_allocation(CutCircuit(c, s), 600, {});
  CHECK_THAT(r.estimate.mean, WithinAbs(1, 1e-12));
}

TEST_CASE("table observables use the joint allocation estimator", "[estimator]") {
  auto c = cluster_demo();
  c.observable.kind = OutputFunction::Kind::table;
  c.observable.table.resize(16);
  for (std::size_t y = 0; y < 16; ++y) c.observable.table[y] = std::sin(0.7 * static_cast<double>(y));
  CutSpec s;
  s.gate_cuts = {cluster_bridge_op(c)};
  const CutCircuit cc(c, s);
  CHECK_THAT(exact_cut_expectation(cc), WithinAbs(exact_expectation(c), 1e-10));
  SampleOptions opt;
  opt.seed = 2;
  const auto r = run_equal_allocation(cc, 12000, opt);
  CHECK(r.estimator == AllocationEstimator::joint);
  CHECK(std::abs(r.estimate.mean - exact_expectation(c)) < 5 * r.estimate.std_error);
}

TEST_CASE("deterministic output gives zero variance", "[estimator]") {
  // |0>|0> with CZ cut and ZZ measured: every term is deterministic given its signs
  CircuitIR c;
  c.n_qubits = 2;
  c.observable = pauli_observable("ZZ");
  c.ops = {{GateKind::CZ, {0, 1}}};
  CutSpec s;
  s.gate_cuts = {0};
  const CutCircuit cc(c, s);
  const auto r = run_equal_allocation(cc, 600, {});
  CHECK_THAT(r.estimate.mean, WithinAbs(1, 1e-12));
  CHECK(r.estimate.per_term[0].variance == 0.0);
  CHECK(r.estimate.per_term[1].variance == 0.0);
}

TEST_CASE("property: results do not depend on thread count", "[estimator][property]") {
  const auto cc = cluster_cut(false);
  SampleOptions one;
  one.seed = 99;
  one.record_shots = true;
  SampleOptions four = one;
  four.threads = 4;
  const auto a = run_monte_carlo(cc, 3000, one);
  const auto b = run_monte_carlo(cc, 3000, four);
  CHECK(a.values == b.values);
  CHECK(a.estimate.mean == b.estimate.mean);
  const auto ea = run_equal_allocation(cc, 1200, one);
  const auto eb = run_equal_allocation(cc, 1200, four);
  CHECK(ea.estimate.mean == eb.estimate.mean);
  CHECK(ea.estimate.variance == eb.estimate.variance);
  CHECK(encode_shot_log(ea.records) == encode_shot_log(eb.records));
  const auto la = run_local_allocation(cc, 1200, one);
  const auto lb = run_local_allocation(cc, 1200, four);
  CHECK(la.estimate.mean == lb.estimate.mean);
  CHECK(la.estimate.variance == lb.estimate.variance);
  CHECK(encode_shot_log(la.records) == encode_shot_log(lb.records));
}

TEST_CASE("shot width limit", "[estimator]") {
  // every qubit stays live from the first layer to the last, so no reuse is possible
  CircuitIR c;
  c.n_qubits = 9;
  c.observable = pauli_observable("ZZZZZZZZZ");
  for (int q = 0; q < 9; ++q) c.ops.push_back({GateKind::H, {q}});
  for (int q = 0; q + 1 < 9; ++q) c.ops.push_back({GateKind::CZ, {q, q + 1}});
  for (int q = 0; q < 9; ++q) c.ops.push_back({GateKind::H, {q}});
  const CutCircuit cc(c, {});
  REQUIRE(cc.fragments().max_width == 9);
  CHECK_THROWS_AS(run_monte_carlo(cc, 10, {}), ConfigurationError);
}
