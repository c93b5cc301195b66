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
#include <vector>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qcut;
using Catch::Matchers::WithinAbs;

namespace {

// Dense embedding of a k-qubit operator on `targets` (targets[0] most
// significant within the operator) into n qubits.
CMatrix embed(const CMatrix& u, const std::vector<int>& targets, int n) {
  const int d = 1 << n;
  const int k = static_cast<int>(targets.size());
  CMatrix out = CMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    int sub_in = 0;
    for (int m = 0; m < k; ++m) sub_in = (sub_in << 1) | ((col >> (n - 1 - targets[m])) & 1);
    for (int sub_out = 0; sub_out < (1 << k); ++sub_out) {
      int row = col;
      for (int m = 0; m < k; ++m) {
        const int bit = (sub_out >> (k - 1 - m)) & 1;
        const int shift = n - 1 - targets[m];
        row = (row & ~(1 << shift)) | (bit << shift);
      }
      out(row, col) += u(sub_out, sub_in);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("initial state and limits", "[density]") {
  const auto s = init_zero_state(3);
  CHECK(s.dim() == 8);
  CHECK(s.matrix()(0, 0) == Complex(1, 0));
  CHECK_THROWS_AS(init_zero_state(0), ConfigurationError);
  CHECK_THROWS_AS(init_zero_state(kOracleQubitLimit + 1), ConfigurationError);
  CHECK_THROWS_AS(init_zero_state(kShotQubitLimit + 1, kShotQubitLimit), ConfigurationError);
  CHECK_THROWS_AS(DensityState(2, CMatrix::Identity(2, 2)), ValidationError);
}

TEST_CASE("local application agrees with dense embedding", "[density][property]") {
  for (int trial = 0; trial < 30; ++trial) {
    KeyedStream rng(303, 0, static_cast<std::uint64_t>(trial));
    const int n = 3;
    const CMatrix rho = testing::random_density(n, rng);
    std::vector<int> targets;
    if (trial % 3 == 0) targets = {static_cast<int>(rng.below(3))};
    else if (trial % 3 == 1) targets = {0, 2};
    else targets = {2, 1};
    const CMatrix u = testing::random_unitary(static_cast<int>(targets.size()), rng);
    const CMatrix full = embed(u, targets, n);
    const auto out = apply_unitary(DensityState(n, rho), u, targets);
    CHECK((out.matrix() - full * rho * full.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    const CMatrix l = testing::ginibre(1 << targets.size(), rng);
    const CMatrix r = testing::ginibre(1 << targets.size(), rng);
    DensityState m(n, rho);
    m.apply_map(l, r, targets);
    const CMatrix expect = embed(l, targets, n) * rho * embed(r, targets, n).adjoint();
    CHECK((m.matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reset traces out and prepares zero", "[density]") {
  KeyedStream rng(5, 0, 0);
  const CMatrix rho = testing::random_density(2, rng);
  DensityState s(2, rho);
  s.reset(1);
  const auto diag = marginal_diagonal(s, {1});
  CHECK_THAT(diag[0], WithinAbs(1, 1e-12));
  CHECK_THAT(diag[1], WithinAbs(0, 1e-12));
  const auto before = marginal_diagonal(DensityState(2, rho), {0});
  const auto after = marginal_diagonal(s, {0});
  CHECK_THAT(after[0], WithinAbs(before[0], 1e-12));
  CHECK_THAT(s.trace().real(), WithinAbs(1, 1e-12));
}

TEST_CASE("postselected branches sum to the Pauli expectation", "[density][property]") {
  for (int trial = 0; trial < 30; ++trial) {
    KeyedStream rng(404, 0, static_cast<std::uint64_t>(trial));
    const DensityState s(2, testing::random_density(2, rng));
    const auto axis = static_cast<PauliAxis>(1 + trial % 3);
    const int t = trial % 2;
    const auto plus = measure_pauli_postselected(s, axis, t, 1);
    const auto minus = measure_pauli_postselected(s, axis, t, -1);
    CHECK_THAT(plus.probability + minus.probability, WithinAbs(1, 1e-12));
    CHECK_THAT(plus.probability - minus.probability, WithinAbs(single_pauli_expectation(s, axis, t), 1e-12));
  }
  CHECK_THROWS_AS(measure_pauli_postselected(init_zero_state(1), PauliAxis::I, 0, 1), ValidationError);
  CHECK_THROWS_AS(measure_pauli_postselected(init_zero_state(1), PauliAxis::Z, 0, 0), ValidationError);
}

TEST_CASE("sampled outcomes follow the Born rule", "[density][property]") {
  // |psi> = RY(theta)|0>, <Z> = cos(theta)
  const double theta = 1.1;
  const auto s = apply_unitary(init_zero_state(1), gates::rotation(PauliAxis::Y, theta), {0});
  const double p_plus = 0.5 * (1 + std::cos(theta));
  const int n = 20000;
  int plus = 0;
  int zeros = 0;
  for (int i = 0; i < n; ++i) {
    KeyedStream rng(9, 0, static_cast<std::uint64_t>(i));
    const auto m = measure_pauli_sampled(s, PauliAxis::Z, 0, rng);
    if (m.sign == 1) ++plus;
    CHECK_THAT(m.state.trace().real(), WithinAbs(1, 1e-12));
    DensityState copy = s;
    KeyedStream rng2(9, 1, static_cast<std::uint64_t>(i));
    if (sample_z(copy, 0, rng2) == 0) ++zeros;
  }
  const double sigma = std::sqrt(p_plus * (1 - p_plus) / n);
  CHECK(std::abs(plus / double(n) - p_plus) < 5 * sigma);
  CHECK(std::abs(zeros / double(n) - p_plus) < 5 * sigma);
}

TEST_CASE("zero-probability outcomes are never drawn", "[density]") {
  const auto s = init_zero_state(1);
  for (int i = 0; i < 200; ++i) {
    KeyedStream rng(1, 2, static_cast<std::uint64_t>(i));
    CHECK(measure_pauli_sampled(s, PauliAxis::Z, 0, rng).sign == 1);
  }
}

TEST_CASE("Pauli string expectation", "[density]") {
  // Bell state: <ZZ> = <XX> = 1, <YY> = -1
  auto s = apply_unitary(init_zero_state(2), gates::hadamard(), {0});
  s = apply_unitary(s, gates::cnot(), {0, 1});
  using enum PauliAxis;
  CHECK_THAT(pauli_string_expectation(s, {Z, Z}), WithinAbs(1, 1e-14));
  CHECK_THAT(pauli_string_expectation(s, {X, X}), WithinAbs(1, 1e-14));
  CHECK_THAT(pauli_string_expectation(s, {Y, Y}), WithinAbs(-1, 1e-14));
  CHECK_THAT(pauli_string_expectation(s, {Z, I}), WithinAbs(0, 1e-14));
  CHECK_THROWS_AS(pauli_string_expectation(s, {Z}), ValidationError);
}

TEST_CASE("keyed streams are reproducible and distinct", "[rng]") {
  KeyedStream a(1, 2, 3);
  KeyedStream b(1, 2, 3);
  KeyedStream c(1, 2, 4);
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(7) < 7);
  }
}
