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

// Quasi-probability decompositions of non-local operations into local terms:
// the six-term gate cut for exp(i theta A1 ⊗ A2) and its CZ/CNOT forms, the
// measurement cut for S(I + A1 ⊗ A2) and its projection form, and the
// eight-term wire cut.

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcut/channels.hpp"
#include "qcut/errors.hpp"
#include "qcut/gates.hpp"
#include "qcut/pauli.hpp"

namespace qcut {

enum class TargetKind { exp_pauli, cz, cnot, measurement, projection, wire };

inline const char* to_string(TargetKind k) {
  switch (k) {
    case TargetKind::exp_pauli: return "exp_pauli";
    case TargetKind::cz: return "cz";
    case TargetKind::cnot: return "cnot";
    case TargetKind::measurement: return "measurement";
    case TargetKind::projection: return "projection";
    case TargetKind::wire: return "wire";
  }
  return "?";
}

inline TargetKind parse_target_kind(const std::string& s) {
  for (TargetKind k : {TargetKind::exp_pauli, TargetKind::cz, TargetKind::cnot, TargetKind::measurement,
                       TargetKind::projection, TargetKind::wire}) {
    if (s == to_string(k)) return k;
  }
  throw ValidationError("unknown cut target kind '" + s + "'");
}

/// The non-local operation a decomposition stands in for.
struct CutTarget {
  TargetKind kind = TargetKind::wire;
  double theta = 0;  // exp_pauli only
  PauliAxis a1 = PauliAxis::Z;
  PauliAxis a2 = PauliAxis::Z;

  int arity() const { return kind == TargetKind::wire ? 1 : 2; }
  bool operator==(const CutTarget&) const = default;
};

inline std::string describe(const CutTarget& t) {
  std::ostringstream out;
  const std::string axes{to_char(t.a1), to_char(t.a2)};
  switch (t.kind) {
    case TargetKind::exp_pauli: out << "exp(i*" << t.theta << "*" << axes << ")"; break;
    case TargetKind::cz: out << "CZ"; break;
    case TargetKind::cnot: out << "CNOT"; break;
    case TargetKind::measurement: out << "S(I+" << axes << ")"; break;
    case TargetKind::projection: out << "(I+" << axes << ")/2"; break;
    case TargetKind::wire: out << "wire"; break;
  }
  return out.str();
}

/// One weighted term. For two-qubit targets `left` acts on the first
/// endpoint and `right` on the second. For a wire cut `left` closes the
/// upstream segment and `right` opens the downstream one.
struct CutTerm {
  double coefficient = 0;
  ChannelSequence left;
  ChannelSequence right;
};

struct CutDecomposition {
  CutTarget target;
  std::vector<CutTerm> terms;
  double gamma = 0;

  std::size_t size() const { return terms.size(); }
};

inline double one_norm(const std::vector<CutTerm>& terms) {
  double g = 0;
  for (const CutTerm& t : terms) g += std::abs(t.coefficient);
  return g;
}

/// Closed-form 1-norm of the gate cut at angle theta.
inline double gate_cut_gamma(double theta) { return 1.0 + 2.0 * std::abs(std::sin(2.0 * theta)); }

namespace detail {

inline void require_axis(PauliAxis a) {
  if (a == PauliAxis::I) throw ValidationError("cut axis must be X, Y or Z");
}

inline CutDecomposition finish(CutTarget target, std::vector<CutTerm> terms) {
  CutDecomposition d{target, std::move(terms), 0};
  d.gamma = one_norm(d.terms);
  return d;
}

}  // namespace detail

/// Six-term decomposition of S(exp(i theta A1 ⊗ A2)). All six terms are kept
/// even where a coefficient vanishes so the term index space stays fixed.
inline CutDecomposition gate_cut(double theta, PauliAxis a1, PauliAxis a2) {
  detail::require_axis(a1);
  detail::require_axis(a2);
  const double c = std::cos(theta), s = std::sin(theta);
  using C = LocalChannel;
  std::vector<CutTerm> terms = {
      {c * c, {}, {}},
      {s * s, {C::pauli(a1)}, {C::pauli(a2)}},
      {c * s, {C::sign_measure(a1)}, {C::rotate(a2, +1)}},
      {-c * s, {C::sign_measure(a1)}, {C::rotate(a2, -1)}},
      {c * s, {C::rotate(a1, +1)}, {C::sign_measure(a2)}},
      {-c * s, {C::rotate(a1, -1)}, {C::sign_measure(a2)}},
  };
  return detail::finish({TargetKind::exp_pauli, theta, a1, a2}, std::move(terms));
}

/// CZ = exp(i pi Z⊗I/4) exp(i pi I⊗Z/4) exp(-i pi Z⊗Z/4) up to a global phase;
/// the local quarter rotations are appended to each endpoint.
inline CutDecomposition cz_cut() {
  CutDecomposition d = gate_cut(-std::numbers::pi / 4, PauliAxis::Z, PauliAxis::Z);
  for (CutTerm& t : d.terms) {
    t.left.push_back(LocalChannel::rotate(PauliAxis::Z, +1));
    t.right.push_back(LocalChannel::rotate(PauliAxis::Z, +1));
  }
  d.target = {TargetKind::cz};
  return d;
}

/// CNOT (control first) = (I ⊗ H) CZ (I ⊗ H), with both Hadamards folded
/// into the target endpoint.
inline CutDecomposition cnot_cut() {
  CutDecomposition d = cz_cut();
  for (CutTerm& t : d.terms) {
    t.right.insert(t.right.begin(), LocalChannel::hadamard());
    t.right.push_back(LocalChannel::hadamard());
  }
  d.target = {TargetKind::cnot};
  return d;
}

/// Decomposition of the (unnormalized) map S(I + A1 ⊗ A2): rho -> (I+A)rho(I+A)
/// with A = A1 ⊗ A2. The postselected ±1 branches of both endpoints pair up
/// into one product of sign-carrying measurements; the i-rotation cross terms
/// give the four quarter-rotation products.
inline CutDecomposition measurement_cut(PauliAxis a1, PauliAxis a2) {
  detail::require_axis(a1);
  detail::require_axis(a2);
  using C = LocalChannel;
  std::vector<CutTerm> terms = {
      {1.0, {}, {}},
      {1.0, {C::pauli(a1)}, {C::pauli(a2)}},
      {2.0, {C::sign_measure(a1)}, {C::sign_measure(a2)}},
  };
  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      terms.push_back({-0.5 * s1 * s2, {C::rotate(a1, s1)}, {C::rotate(a2, s2)}});
    }
  }
  return detail::finish({TargetKind::measurement, 0, a1, a2}, std::move(terms));
}

/// The projection (I + A1 ⊗ A2)/2, whose superoperator is S(I + A1 ⊗ A2)/4.
inline CutDecomposition projection_cut(PauliAxis a1, PauliAxis a2) {
  CutDecomposition d = measurement_cut(a1, a2);
  for (CutTerm& t : d.terms) t.coefficient *= 0.25;
  d.target = {TargetKind::projection, 0, a1, a2};
  d.gamma = one_norm(d.terms);
  return d;
}

/// Identity wire = (1/2) sum over A of Tr_a(A rho) ⊗ A, realized with
/// eigenstate preparations.
inline CutDecomposition wire_cut() {
  using C = LocalChannel;
  using P = PrepLabel;
  const PauliAxis I = PauliAxis::I, X = PauliAxis::X, Y = PauliAxis::Y, Z = PauliAxis::Z;
  std::vector<CutTerm> terms = {
      {0.5, {C::readout(I)}, {C::prepare(P::zero)}},   {0.5, {C::readout(I)}, {C::prepare(P::one)}},
      {0.5, {C::readout(X)}, {C::prepare(P::plus)}},   {-0.5, {C::readout(X)}, {C::prepare(P::minus)}},
      {0.5, {C::readout(Y)}, {C::prepare(P::plus_i)}}, {-0.5, {C::readout(Y)}, {C::prepare(P::minus_i)}},
      {0.5, {C::readout(Z)}, {C::prepare(P::zero)}},   {-0.5, {C::readout(Z)}, {C::prepare(P::one)}},
  };
  return detail::finish({TargetKind::wire}, std::move(terms));
}

/// Canonical decomposition for a target.
inline CutDecomposition canonical_decomposition(const CutTarget& t) {
  switch (t.kind) {
    case TargetKind::exp_pauli: return gate_cut(t.theta, t.a1, t.a2);
    case TargetKind::cz: return cz_cut();
    case TargetKind::cnot: return cnot_cut();
    case TargetKind::measurement: return measurement_cut(t.a1, t.a2);
    case TargetKind::projection: return projection_cut(t.a1, t.a2);
    case TargetKind::wire: return wire_cut();
  }
  throw ValidationError("unknown cut target");
}

/// Exact PTM of the target operation (16x16, or 4x4 for a wire).
inline PauliTransferMatrix target_ptm(const CutTarget& t) {
  switch (t.kind) {
    case TargetKind::exp_pauli: return ptm_of_unitary(gates::exp_pauli_pair(t.theta, t.a1, t.a2), 2);
    case TargetKind::cz: return ptm_of_unitary(gates::cz(), 2);
    case TargetKind::cnot: return ptm_of_unitary(gates::cnot(), 2);
    case TargetKind::measurement: {
      const CMatrix m = gates::identity(2) + kron(gates::pauli(t.a1), gates::pauli(t.a2));
      return ptm_of_general_map(m, m);
    }
    case TargetKind::projection: {
      const CMatrix p = gates::pair_projector(t.a1, t.a2);
      return ptm_of_general_map(p, p);
    }
    case TargetKind::wire: return PauliTransferMatrix::identity(1);
  }
  throw ValidationError("unknown cut target");
}

/// Average map realized by one term. On a wire the upstream qubit is
/// discarded after `left` and the downstream one starts in |0>, which is
/// exactly how fragments execute it.
inline PauliTransferMatrix term_ptm(const CutTerm& term, int arity) {
  if (arity == 2) return tensor(sequence_ptm(term.left), sequence_ptm(term.right));
  return sequence_ptm(term.right) * channel_ptm(LocalChannel::prepare(PrepLabel::zero)) * sequence_ptm(term.left);
}

inline PauliTransferMatrix reassemble(const CutDecomposition& d) {
  const int arity = d.target.arity();
  PauliTransferMatrix sum{arity, RMatrix::Zero(1 << (2 * arity), 1 << (2 * arity))};
  for (const CutTerm& t : d.terms) {
    PauliTransferMatrix p = term_ptm(t, arity);
    p.entries *= t.coefficient;
    sum += p;
  }
  return sum;
}

/// Max-norm residual between the reassembled decomposition and `target`.
inline double verify_cut(const CutDecomposition& d, const PauliTransferMatrix& target) {
  if (target.n_qubits != d.target.arity()) {
    std::ostringstream msg;
    msg << "decomposition acts on " << d.target.arity() << " qubit(s) but the target PTM on " << target.n_qubits;
    throw ValidationError(msg.str());
  }
  return reassemble(d).max_abs_difference(target);
}

inline double verify_cut(const CutDecomposition& d) { return verify_cut(d, target_ptm(d.target)); }

/// Human-readable list of terms in `candidate` that differ from `reference`.
inline std::vector<std::string> diff_terms(const CutDecomposition& reference, const CutDecomposition& candidate,
                                           double tol = 1e-12) {
  std::vector<std::string> out;
  const std::size_t n = std::max(reference.size(), candidate.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream msg;
    msg << "term " << i + 1 << ": ";
    if (i >= reference.size()) {
      msg << "unexpected extra term";
    } else if (i >= candidate.size()) {
      msg << "missing";
    } else {
      const CutTerm& r = reference.terms[i];
      const CutTerm& c = candidate.terms[i];
      if (r.left != c.left || r.right != c.right) {
        msg << "channels [" << describe(c.left) << " | " << describe(c.right) << "], expected ["
            << describe(r.left) << " | " << describe(r.right) << "]";
      } else if (std::abs(r.coefficient - c.coefficient) > tol) {
        msg << "coefficient " << c.coefficient << ", expected " << r.coefficient;
      } else {
        continue;
      }
    }
    out.push_back(msg.str());
  }
  return out;
}

inline void to_json(nlohmann::json& j, const CutTarget& t) {
  j = nlohmann::json{{"kind", to_string(t.kind)}};
  if (t.kind == TargetKind::exp_pauli) j["theta"] = t.theta;
  if (t.kind == TargetKind::exp_pauli || t.kind == TargetKind::measurement || t.kind == TargetKind::projection) {
    j["axes"] = std::string{to_char(t.a1), to_char(t.a2)};
  }
}

inline void from_json(const nlohmann::json& j, CutTarget& t) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("cut target needs a \"kind\" field");
  t = CutTarget{};
  t.kind = parse_target_kind(j.at("kind").get<std::string>());
  if (j.contains("theta")) t.theta = j.at("theta").get<double>();
  if (j.contains("axes")) {
    const std::string axes = j.at("axes").get<std::string>();
    if (axes.size() != 2) throw ValidationError("cut target axes must name two Paulis");
    t.a1 = parse_pauli_axis(axes[0]);
    t.a2 = parse_pauli_axis(axes[1]);
  }
  if (t.kind == TargetKind::exp_pauli && !std::isfinite(t.theta)) throw ValidationError("theta must be finite");
}

inline void to_json(nlohmann::json& j, const CutTerm& t) {
  j = nlohmann::json{{"coefficient", t.coefficient}, {"left", t.left}, {"right", t.right}};
}

inline void from_json(const nlohmann::json& j, CutTerm& t) {
  if (!j.is_object() || !j.contains("coefficient")) throw ValidationError("cut term needs a \"coefficient\" field");
  t.coefficient = j.at("coefficient").get<double>();
  if (!std::isfinite(t.coefficient)) throw ValidationError("cut term coefficient must be finite");
  t.left = j.value("left", ChannelSequence{});
  t.right = j.value("right", ChannelSequence{});
}

inline void to_json(nlohmann::json& j, const CutDecomposition& d) {
  j = nlohmann::json{{"target", d.target}, {"terms", d.terms}, {"gamma", d.gamma}};
}

/// The stored gamma is ignored; it is always recomputed from the terms.
inline void from_json(const nlohmann::json& j, CutDecomposition& d) {
  if (!j.is_object() || !j.contains("target") || !j.contains("terms")) {
    throw ValidationError("decomposition needs \"target\" and \"terms\" fields");
  }
  d.target = j.at("target").get<CutTarget>();
  d.terms = j.at("terms").get<std::vector<CutTerm>>();
  if (d.terms.empty()) throw ValidationError("decomposition has no terms");
  d.gamma = one_norm(d.terms);
}

}  // namespace qcut
