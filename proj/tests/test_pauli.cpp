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

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qcut;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::size_t idx(const char* s) {
  std::size_t out = 0;
  for (const char* p = s; *p; ++p) out = (out << 2) | static_cast<std::size_t>(parse_pauli_axis(*p));
  return out;
}

}  // namespace

TEST_CASE("identity unitary gives identity PTM", "[pauli]") {
  const auto s = ptm_of_unitary(CMatrix::Identity(2, 2), 1);
  CHECK(s.max_abs_difference(PauliTransferMatrix::identity(1)) < 1e-14);
}

TEST_CASE("Hadamard PTM swaps X and Z and flips Y", "[pauli]") {
  const auto s = ptm_of_unitary(gates::hadamard(), 1).entries;
  CHECK_THAT(s(0, 0), WithinAbs(1, 1e-14));
  CHECK_THAT(s(3, 1), WithinAbs(1, 1e-14));
  CHECK_THAT(s(1, 3), WithinAbs(1, 1e-14));
  CHECK_THAT(s(2, 2), WithinAbs(-1, 1e-14));
  CHECK_THAT(s.cwiseAbs().sum(), WithinAbs(4, 1e-13));
}

TEST_CASE("CZ PTM conjugation table", "[pauli]") {
  const auto s = ptm_of_unitary(gates::cz(), 2).entries;
  CHECK_THAT(s(idx("ZI"), idx("ZI")), WithinAbs(1, 1e-14));
  CHECK_THAT(s(idx("XI"), idx("XI")), WithinAbs(0, 1e-14));
  CHECK_THAT(s(idx("XZ"), idx("XI")), WithinAbs(1, 1e-14));
  CHECK_THAT(s(idx("ZX"), idx("IX")), WithinAbs(1, 1e-14));
}

TEST_CASE("non-unitary input is rejected with its deviation", "[pauli]") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 2.0;
  CHECK_THROWS_AS(ptm_of_unitary(m, 1), ValidationError);
  CHECK_THROWS_WITH(ptm_of_unitary(m, 1), ContainsSubstring("not unitary"));
  CHECK_THROWS_AS(ptm_of_unitary(CMatrix::Identity(2, 2), 2), ValidationError);
  CHECK_THROWS_AS(ptm_of_unitary(CMatrix::Identity(8, 8), 3), ValidationError);
}

TEST_CASE("general map PTMs", "[pauli]") {
  const CMatrix id = CMatrix::Identity(2, 2);
  SECTION("unnormalized Z projector") {
    const CMatrix l = id + gates::pauli(PauliAxis::Z);
    const auto s = ptm_of_general_map(l, l).entries;
    CHECK_THAT(s(0, 0), WithinAbs(2, 1e-14));
    CHECK_THAT(s(0, 3), WithinAbs(2, 1e-14));
    CHECK_THAT(s(3, 0), WithinAbs(2, 1e-14));
    CHECK_THAT(s(3, 3), WithinAbs(2, 1e-14));
    CHECK_THAT(s(1, 1), WithinAbs(0, 1e-14));
    CHECK_THAT(s(2, 2), WithinAbs(0, 1e-14));
  }
  SECTION("quarter X rotation maps Y to -Z") {
    const CMatrix l = (id + Complex(0, 1) * gates::pauli(PauliAxis::X)) * kInvSqrt2;
    const auto s = ptm_of_general_map(l, l).entries;
    CHECK_THAT(s(3, 2), WithinAbs(-1, 1e-14));
    CHECK_THAT(s(2, 3), WithinAbs(1, 1e-14));
  }
  SECTION("size mismatch") {
    CHECK_THROWS_AS(ptm_of_general_map(id, CMatrix::Identity(4, 4)), ValidationError);
  }
  SECTION("non-Hermiticity-preserving map") {
    const CMatrix l = Complex(0, 1) * id;
    CHECK_THROWS_AS(ptm_of_general_map(l, id), ValidationError);
  }
}

TEST_CASE("density vectors", "[pauli]") {
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  auto v = pauli_vector_of_density(zero).coefficients;
  CHECK_THAT(v(0), WithinAbs(kInvSqrt2, 1e-15));
  CHECK_THAT(v(1), WithinAbs(0, 1e-15));
  CHECK_THAT(v(2), WithinAbs(0, 1e-15));
  CHECK_THAT(v(3), WithinAbs(kInvSqrt2, 1e-15));

  v = pauli_vector_of_density(0.5 * CMatrix::Identity(2, 2)).coefficients;
  CHECK_THAT(v(0), WithinAbs(kInvSqrt2, 1e-15));
  CHECK_THAT(v.tail(3).norm(), WithinAbs(0, 1e-15));

  const CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  v = pauli_vector_of_density(plus).coefficients;
  CHECK_THAT(v(1), WithinAbs(kInvSqrt2, 1e-15));
  CHECK_THAT(v(3), WithinAbs(0, 1e-15));

  CMatrix bad = zero;
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(pauli_vector_of_density(bad), ValidationError);
  CHECK_THROWS_AS(pauli_vector_of_density(2.0 * zero), ValidationError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(pauli_vector_of_density(neg), ValidationError);
}

TEST_CASE("expectation examples", "[pauli]") {
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  const auto rho = pauli_vector_of_density(zero);
  const auto z = pauli_vector_of_operator(gates::pauli(PauliAxis::Z));
  const auto x = pauli_vector_of_operator(gates::pauli(PauliAxis::X));
  const auto id = PauliTransferMatrix::identity(1);
  const auto h = ptm_of_unitary(gates::hadamard(), 1);
  CHECK_THAT(expectation(z, id, rho), WithinAbs(1, 1e-14));
  CHECK_THAT(expectation(z, h, rho), WithinAbs(0, 1e-14));
  CHECK_THAT(expectation(x, h, rho), WithinAbs(1, 1e-14));
  CHECK_THROWS_AS(expectation(z, PauliTransferMatrix::identity(2), rho), ValidationError);
}

TEST_CASE("tensor products", "[pauli]") {
  const auto i1 = PauliTransferMatrix::identity(1);
  CHECK(tensor(i1, i1).max_abs_difference(PauliTransferMatrix::identity(2)) < 1e-15);

  const auto x = ptm_of_unitary(gates::pauli(PauliAxis::X), 1);
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1;
  CMatrix one = CMatrix::Zero(2, 2);
  one(1, 1) = 1;
  const auto p00 = tensor(pauli_vector_of_density(zero), pauli_vector_of_density(zero));
  const auto p10 = tensor(pauli_vector_of_density(one), pauli_vector_of_density(zero));
  CHECK((tensor(x, i1).apply(p00).coefficients - p10.coefficients).norm() < 1e-14);

  KeyedStream rng(11, 0, 0);
  const auto a = ptm_of_unitary(testing::random_unitary(1, rng), 1);
  const auto b = ptm_of_unitary(testing::random_unitary(1, rng), 1);
  const auto c = ptm_of_unitary(testing::random_unitary(1, rng), 1);
  CHECK(tensor(tensor(a, b), c).max_abs_difference(tensor(a, tensor(b, c))) < 1e-14);
}

TEST_CASE("property: two-qubit basis is orthonormal", "[pauli][property]") {
  for (std::size_t j = 0; j < 16; ++j) {
    for (std::size_t k = 0; k < 16; ++k) {
      const Complex ip = (pauli_basis_element(j, 2).adjoint() * pauli_basis_element(k, 2)).trace();
      CHECK(std::abs(ip - Complex(j == k ? 1.0 : 0.0, 0)) < 1e-14);
    }
  }
}

TEST_CASE("property: PTM composition matches matrix product", "[pauli][property]") {
  for (int trial = 0; trial < 100; ++trial) {
    KeyedStream rng(101, 0, static_cast<std::uint64_t>(trial));
    const int k = 1 + trial % 2;
    const CMatrix u = testing::random_unitary(k, rng);
    const CMatrix v = testing::random_unitary(k, rng);
    const auto su = ptm_of_unitary(u, k);
    const auto sv = ptm_of_unitary(v, k);
    const auto suv = ptm_of_unitary(CMatrix(u * v), k);
    CHECK(suv.max_abs_difference(su * sv) < 1e-12);
    // orthogonal, trace preserving
    const Eigen::Index d = su.entries.rows();
    CHECK((su.entries.transpose() * su.entries - RMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(su.entries(0, 0), WithinAbs(1, 1e-12));
  }
}

TEST_CASE("property: density round trip", "[pauli][property]") {
  for (int trial = 0; trial < 100; ++trial) {
    KeyedStream rng(202, 0, static_cast<std::uint64_t>(trial));
    const int n = 1 + trial % 3;
    const CMatrix rho = testing::random_density(n, rng);
    const auto v = pauli_vector_of_density(rho);
    CHECK((operator_of_pauli_vector(v) - rho).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(v.coefficients(0), WithinAbs(std::pow(2.0, -0.5 * n), 1e-12));
  }
}
