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

// The local-operation zoo used by cut decompositions: single-qubit unitaries,
// sign-carrying and postselected Pauli measurements, state preparation and
// observable readout. Each channel has a 4x4 PTM (the linear map it
// contributes on average) and an executable form in the program layer.

#include <json.hpp>

#include <numbers>
#include <string>
#include <vector>

#include "qcut/errors.hpp"
#include "qcut/gates.hpp"
#include "qcut/pauli.hpp"

namespace qcut {

enum class ChannelKind { identity, pauli, rotate, hadamard, sign_measure, postselect, prepare, readout };

enum class PrepLabel { zero, one, plus, minus, plus_i, minus_i };

inline const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::identity: return "identity";
    case ChannelKind::pauli: return "pauli";
    case ChannelKind::rotate: return "rotate";
    case ChannelKind::hadamard: return "hadamard";
    case ChannelKind::sign_measure: return "sign_measure";
    case ChannelKind::postselect: return "postselect";
    case ChannelKind::prepare: return "prepare";
    case ChannelKind::readout: return "readout";
  }
  return "?";
}

inline ChannelKind parse_channel_kind(const std::string& s) {
  for (ChannelKind k : {ChannelKind::identity, ChannelKind::pauli, ChannelKind::rotate, ChannelKind::hadamard,
                        ChannelKind::sign_measure, ChannelKind::postselect, ChannelKind::prepare,
                        ChannelKind::readout}) {
    if (s == to_string(k)) return k;
  }
  throw ValidationError("unknown channel kind '" + s + "'");
}

inline const char* to_string(PrepLabel p) {
  switch (p) {
    case PrepLabel::zero: return "0";
    case PrepLabel::one: return "1";
    case PrepLabel::plus: return "+";
    case PrepLabel::minus: return "-";
    case PrepLabel::plus_i: return "+i";
    case PrepLabel::minus_i: return "-i";
  }
  return "?";
}

inline PrepLabel parse_prep_label(const std::string& s) {
  for (PrepLabel p : {PrepLabel::zero, PrepLabel::one, PrepLabel::plus, PrepLabel::minus, PrepLabel::plus_i,
                      PrepLabel::minus_i}) {
    if (s == to_string(p)) return p;
  }
  throw ValidationError("unknown preparation label '" + s + "'");
}

/// Unitary taking |0> to the labelled state.
inline CMatrix prep_unitary(PrepLabel p) {
  switch (p) {
    case PrepLabel::zero: return gates::identity();
    case PrepLabel::one: return gates::pauli(PauliAxis::X);
    case PrepLabel::plus: return gates::hadamard();
    case PrepLabel::minus: return gates::hadamard() * gates::pauli(PauliAxis::X);
    case PrepLabel::plus_i: return gates::phase_s() * gates::hadamard();
    case PrepLabel::minus_i: return gates::phase_sdg() * gates::hadamard();
  }
  return gates::identity();
}

inline CMatrix prep_density(PrepLabel p) {
  const CMatrix u = prep_unitary(p);
  return u.col(0) * u.col(0).adjoint();
}

struct LocalChannel {
  ChannelKind kind = ChannelKind::identity;
  PauliAxis axis = PauliAxis::I;
  int sign = 1;  // rotation direction, or the postselected outcome
  PrepLabel state = PrepLabel::zero;

  static LocalChannel identity() { return {}; }
  static LocalChannel pauli(PauliAxis a) { return {ChannelKind::pauli, a}; }
  /// exp(i sign pi A / 4); only +-pi/2 rotations are part of the zoo.
  static LocalChannel rotate(PauliAxis a, int sign) { return {ChannelKind::rotate, a, sign}; }
  static LocalChannel hadamard() { return {ChannelKind::hadamard}; }
  /// Born-sampled measurement whose outcome multiplies the run's weight.
  static LocalChannel sign_measure(PauliAxis a) { return {ChannelKind::sign_measure, a}; }
  static LocalChannel postselect(PauliAxis a, int alpha) { return {ChannelKind::postselect, a, alpha}; }
  static LocalChannel prepare(PrepLabel p) { return {ChannelKind::prepare, PauliAxis::I, 1, p}; }
  /// Measure-out of observable A (I reads out the trace with sign +1).
  static LocalChannel readout(PauliAxis a) { return {ChannelKind::readout, a}; }

  friend bool operator==(const LocalChannel&, const LocalChannel&) = default;
};

using ChannelSequence = std::vector<LocalChannel>;

inline void validate(const LocalChannel& c) {
  switch (c.kind) {
    case ChannelKind::rotate:
      if (c.axis == PauliAxis::I) throw ValidationError("rotation axis must be X, Y or Z");
      if (c.sign != 1 && c.sign != -1) throw ValidationError("rotation angle must be +pi/2 or -pi/2");
      break;
    case ChannelKind::sign_measure:
      if (c.axis == PauliAxis::I) throw ValidationError("measurement axis must be X, Y or Z");
      break;
    case ChannelKind::postselect:
      if (c.axis == PauliAxis::I) throw ValidationError("measurement axis must be X, Y or Z");
      if (c.sign != 1 && c.sign != -1) throw ValidationError("postselected outcome must be +1 or -1");
      break;
    default: break;
  }
}

inline std::string describe(const LocalChannel& c) {
  const std::string a(1, to_char(c.axis));
  switch (c.kind) {
    case ChannelKind::identity: return "I";
    case ChannelKind::pauli: return a;
    case ChannelKind::rotate: return std::string("R") + a + (c.sign > 0 ? "(+pi/2)" : "(-pi/2)");
    case ChannelKind::hadamard: return "H";
    case ChannelKind::sign_measure: return "M'" + a;
    case ChannelKind::postselect: return "M" + a + (c.sign > 0 ? "[+1]" : "[-1]");
    case ChannelKind::prepare: return std::string("prep|") + to_string(c.state) + ">";
    case ChannelKind::readout: return "read " + a;
  }
  return "?";
}

inline std::string describe(const ChannelSequence& seq) {
  if (seq.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += " ; ";
    out += describe(seq[i]);
  }
  return out;
}

namespace detail {

inline PauliTransferMatrix signed_measure_ptm(PauliAxis a) {
  const CMatrix plus = gates::axis_projector(a, 1);
  const CMatrix minus = gates::axis_projector(a, -1);
  PauliTransferMatrix out = ptm_of_general_map(plus, plus);
  out.entries -= ptm_of_general_map(minus, minus).entries;
  return out;
}

}  // namespace detail

/// Average linear map of one channel as a 4x4 PTM.
inline PauliTransferMatrix channel_ptm(const LocalChannel& c) {
  validate(c);
  switch (c.kind) {
    case ChannelKind::identity: return PauliTransferMatrix::identity(1);
    case ChannelKind::pauli: return ptm_of_unitary(gates::pauli(c.axis), 1);
    case ChannelKind::rotate: return ptm_of_unitary(gates::quarter_rotation(c.axis, c.sign), 1);
    case ChannelKind::hadamard: return ptm_of_unitary(gates::hadamard(), 1);
    case ChannelKind::sign_measure: return detail::signed_measure_ptm(c.axis);
    case ChannelKind::postselect: {
      const CMatrix p = gates::axis_projector(c.axis, c.sign);
      return ptm_of_general_map(p, p);
    }
    case ChannelKind::prepare: {
      const CMatrix psi = prep_density(c.state);
      return ptm_of_linear_map(1, [&](const CMatrix& e) { return CMatrix(e.trace() * psi); });
    }
    case ChannelKind::readout:
      if (c.axis == PauliAxis::I) return PauliTransferMatrix::identity(1);
      return detail::signed_measure_ptm(c.axis);
  }
  return PauliTransferMatrix::identity(1);
}

/// PTM of a sequence applied left to right.
inline PauliTransferMatrix sequence_ptm(const ChannelSequence& seq) {
  PauliTransferMatrix out = PauliTransferMatrix::identity(1);
  for (const LocalChannel& c : seq) out = channel_ptm(c) * out;
  return out;
}

inline void to_json(nlohmann::json& j, const LocalChannel& c) {
  j = nlohmann::json{{"kind", to_string(c.kind)}};
  switch (c.kind) {
    case ChannelKind::pauli:
    case ChannelKind::sign_measure:
    case ChannelKind::readout: j["axis"] = std::string(1, to_char(c.axis)); break;
    case ChannelKind::rotate:
      j["axis"] = std::string(1, to_char(c.axis));
      j["sign"] = c.sign;
      break;
    case ChannelKind::postselect:
      j["axis"] = std::string(1, to_char(c.axis));
      j["alpha"] = c.sign;
      break;
    case ChannelKind::prepare: j["state"] = to_string(c.state); break;
    default: break;
  }
}

inline void from_json(const nlohmann::json& j, LocalChannel& c) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("channel descriptor needs a \"kind\" field");
  c = LocalChannel{};
  c.kind = parse_channel_kind(j.at("kind").get<std::string>());
  if (j.contains("axis")) c.axis = parse_pauli_axis(j.at("axis").get<std::string>());
  if (j.contains("sign")) c.sign = j.at("sign").get<int>();
  if (j.contains("alpha")) c.sign = j.at("alpha").get<int>();
  if (j.contains("state")) c.state = parse_prep_label(j.at("state").get<std::string>());
  validate(c);
}

}  // namespace qcut
