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

// Circuit intermediate representation, its JSON document format, and cut
// specifications (which two-qubit ops are gate-cut, where wires are cut).

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcut/cut_rules.hpp"
#include "qcut/errors.hpp"
#include "qcut/gates.hpp"
#include "qcut/pauli.hpp"

namespace qcut {

inline constexpr int kCircuitFormatVersion = 1;
inline constexpr int kMaxCircuitQubits = 64;

enum class GateKind { H, S, SDG, X, Y, Z, RX, RY, RZ, CZ, CNOT, EXP, PROJ };

inline const char* to_string(GateKind g) {
  switch (g) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::SDG: return "SDG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::EXP: return "EXP";
    case GateKind::PROJ: return "PROJ";
  }
  return "?";
}

inline std::optional<GateKind> parse_gate_kind(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "CX") return GateKind::CNOT;
  for (GateKind g : {GateKind::H, GateKind::S, GateKind::SDG, GateKind::X, GateKind::Y, GateKind::Z, GateKind::RX,
                     GateKind::RY, GateKind::RZ, GateKind::CZ, GateKind::CNOT, GateKind::EXP, GateKind::PROJ}) {
    if (s == to_string(g)) return g;
  }
  return std::nullopt;
}

inline int gate_arity(GateKind g) {
  switch (g) {
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::EXP:
    case GateKind::PROJ: return 2;
    default: return 1;
  }
}

inline bool has_angle(GateKind g) {
  return g == GateKind::RX || g == GateKind::RY || g == GateKind::RZ || g == GateKind::EXP;
}

inline bool has_paulis(GateKind g) { return g == GateKind::EXP || g == GateKind::PROJ; }

struct Op {
  GateKind gate = GateKind::H;
  std::vector<int> qubits;
  double theta = 0;
  PauliAxis p1 = PauliAxis::Z;  // EXP / PROJ only
  PauliAxis p2 = PauliAxis::Z;
  bool cut = false;  // advisory flag: natural gate-cut candidate

  bool operator==(const Op&) const = default;
};

/// Matrix of an op on its own qubits. For PROJ this is the projector, so
/// the op acts as rho -> P rho P.
inline CMatrix op_matrix(const Op& op) {
  switch (op.gate) {
    case GateKind::H: return gates::hadamard();
    case GateKind::S: return gates::phase_s();
    case GateKind::SDG: return gates::phase_sdg();
    case GateKind::X: return gates::pauli(PauliAxis::X);
    case GateKind::Y: return gates::pauli(PauliAxis::Y);
    case GateKind::Z: return gates::pauli(PauliAxis::Z);
    case GateKind::RX: return gates::rotation(PauliAxis::X, op.theta);
    case GateKind::RY: return gates::rotation(PauliAxis::Y, op.theta);
    case GateKind::RZ: return gates::rotation(PauliAxis::Z, op.theta);
    case GateKind::CZ: return gates::cz();
    case GateKind::CNOT: return gates::cnot();
    case GateKind::EXP: return gates::exp_pauli_pair(op.theta, op.p1, op.p2);
    case GateKind::PROJ: return gates::pair_projector(op.p1, op.p2);
  }
  throw ValidationError("unknown gate");
}

/// The non-local operation a gate cut on `op` must reproduce.
inline CutTarget op_cut_target(const Op& op) {
  switch (op.gate) {
    case GateKind::CZ: return {TargetKind::cz};
    case GateKind::CNOT: return {TargetKind::cnot};
    case GateKind::EXP: return {TargetKind::exp_pauli, op.theta, op.p1, op.p2};
    case GateKind::PROJ: return {TargetKind::projection, 0, op.p1, op.p2};
    default: throw ValidationError(std::string("gate ") + to_string(op.gate) + " is not cuttable");
  }
}

/// Diagonal output function: a Pauli string (measured after local basis
/// changes) or an explicit table f(y) over all 2^n outcomes.
struct OutputFunction {
  enum class Kind { pauli, table };
  Kind kind = Kind::pauli;
  std::vector<PauliAxis> paulis;  // one per qubit
  std::vector<double> table;      // index y with qubit 0 as the most significant bit

  bool operator==(const OutputFunction&) const = default;

  /// f(y) for a full n-bit outcome.
  double value(std::uint64_t y, int n) const {
    if (kind == Kind::table) return table.at(static_cast<std::size_t>(y));
    int parity = 0;
    for (int q = 0; q < n; ++q) {
      if (paulis[static_cast<std::size_t>(q)] != PauliAxis::I) parity ^= static_cast<int>((y >> (n - 1 - q)) & 1U);
    }
    return parity ? -1.0 : 1.0;
  }

  std::string label() const {
    if (kind == Kind::table) return "table";
    std::string s;
    for (PauliAxis a : paulis) s += to_char(a);
    return s;
  }
};

struct CircuitIR {
  int n_qubits = 0;
  std::vector<Op> ops;
  OutputFunction observable;

  bool operator==(const CircuitIR&) const = default;

  std::vector<int> flagged_ops() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].cut) out.push_back(static_cast<int>(i));
    }
    return out;
  }
};

inline OutputFunction pauli_observable(const std::string& label) {
  OutputFunction f;
  for (char c : label) f.paulis.push_back(parse_pauli_axis(c));
  return f;
}

/// Throws ValidationError describing the first problem found.
inline void validate(const CircuitIR& c) {
  if (c.n_qubits < 1 || c.n_qubits > kMaxCircuitQubits) {
    std::ostringstream msg;
    msg << "n must be between 1 and " << kMaxCircuitQubits << ", got " << c.n_qubits;
    throw ValidationError(msg.str());
  }
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const Op& op = c.ops[i];
    auto fail = [&](const std::string& what) {
      std::ostringstream msg;
      msg << "op " << i << " (" << to_string(op.gate) << "): " << what;
      throw ValidationError(msg.str());
    };
    if (static_cast<int>(op.qubits.size()) != gate_arity(op.gate)) {
      fail("expects " + std::to_string(gate_arity(op.gate)) + " qubit(s), got " + std::to_string(op.qubits.size()));
    }
    for (int q : op.qubits) {
      if (q < 0 || q >= c.n_qubits) fail("qubit " + std::to_string(q) + " out of range");
    }
    if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1]) fail("repeated qubit " + std::to_string(op.qubits[0]));
    if (!std::isfinite(op.theta)) fail("angle must be finite");
    if (has_paulis(op.gate) && (op.p1 == PauliAxis::I || op.p2 == PauliAxis::I)) fail("paulis must be X, Y or Z");
    if (op.cut && gate_arity(op.gate) != 2) fail("only two-qubit ops can be flagged for cutting");
  }
  const OutputFunction& f = c.observable;
  if (f.kind == OutputFunction::Kind::pauli) {
    if (static_cast<int>(f.paulis.size()) != c.n_qubits) {
      throw ValidationError("observable: Pauli string length " + std::to_string(f.paulis.size()) +
                            " does not match n = " + std::to_string(c.n_qubits));
    }
  } else {
    if (c.n_qubits > 20) throw ValidationError("observable: tables are limited to n <= 20");
    if (f.table.size() != (std::size_t{1} << c.n_qubits)) {
      throw ValidationError("observable: table needs 2^n = " + std::to_string(std::size_t{1} << c.n_qubits) +
                            " entries, got " + std::to_string(f.table.size()));
    }
    for (std::size_t y = 0; y < f.table.size(); ++y) {
      if (!std::isfinite(f.table[y]) || std::abs(f.table[y]) > 1.0) {
        throw ValidationError("observable: table entry " + std::to_string(y) + " must lie in [-1, 1]");
      }
    }
  }
}

inline nlohmann::json circuit_to_json(const CircuitIR& c) {
  nlohmann::json ops = nlohmann::json::array();
  for (const Op& op : c.ops) {
    nlohmann::json j{{"gate", to_string(op.gate)}, {"q", op.qubits}};
    if (has_angle(op.gate)) j["theta"] = op.theta;
    if (has_paulis(op.gate)) j["paulis"] = std::string{to_char(op.p1), to_char(op.p2)};
    if (op.cut) j["cut"] = true;
    ops.push_back(std::move(j));
  }
  nlohmann::json out{{"version", kCircuitFormatVersion}, {"n", c.n_qubits}, {"ops", std::move(ops)}};
  if (c.observable.kind == OutputFunction::Kind::pauli) {
    out["observable"] = c.observable.label();
  } else {
    out["observable"] = nlohmann::json{{"table", c.observable.table}};
  }
  return out;
}

inline CircuitIR circuit_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("circuit document must be a JSON object");
  if (doc.contains("version")) {
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kCircuitFormatVersion) {
      throw ValidationError("unsupported circuit format version (expected 1)");
    }
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ValidationError("field \"n\" must be an integer");
  CircuitIR c;
  c.n_qubits = doc["n"].get<int>();
  if (!doc.contains("ops") || !doc["ops"].is_array()) throw ValidationError("field \"ops\" must be an array");
  const nlohmann::json& ops = doc["ops"];
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const nlohmann::json& j = ops[i];
    auto fail = [&](const std::string& what) {
      std::ostringstream msg;
      msg << "op " << i << ": " << what;
      throw ValidationError(msg.str());
    };
    if (!j.is_object()) fail("must be an object");
    if (!j.contains("gate") || !j["gate"].is_string()) fail("missing \"gate\" name");
    const auto kind = parse_gate_kind(j["gate"].get<std::string>());
    if (!kind) fail("unknown gate '" + j["gate"].get<std::string>() + "'");
    Op op;
    op.gate = *kind;
    if (!j.contains("q") || !j["q"].is_array()) fail("missing qubit list \"q\"");
    for (const auto& q : j["q"]) {
      if (!q.is_number_integer()) fail("qubit indices must be integers");
      op.qubits.push_back(q.get<int>());
    }
    if (has_angle(op.gate)) {
      if (!j.contains("theta") || !j["theta"].is_number()) fail("missing numeric \"theta\"");
      op.theta = j["theta"].get<double>();
    } else if (j.contains("theta")) {
      fail("gate takes no angle");
    }
    if (has_paulis(op.gate)) {
      const std::string p = j.value("paulis", std::string("ZZ"));
      if (p.size() != 2) fail("\"paulis\" must name two Paulis");
      try {
        op.p1 = parse_pauli_axis(p[0]);
        op.p2 = parse_pauli_axis(p[1]);
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
    if (j.contains("cut")) {
      if (!j["cut"].is_boolean()) fail("\"cut\" must be a boolean");
      op.cut = j["cut"].get<bool>();
    }
    c.ops.push_back(std::move(op));
  }
  if (!doc.contains("observable")) {
    c.observable.paulis.assign(static_cast<std::size_t>(std::max(c.n_qubits, 0)), PauliAxis::Z);
  } else if (doc["observable"].is_string()) {
    try {
      c.observable = pauli_observable(doc["observable"].get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("observable: ") + e.what());
    }
  } else if (doc["observable"].is_object() && doc["observable"].contains("table")) {
    c.observable.kind = OutputFunction::Kind::table;
    for (const auto& v : doc["observable"]["table"]) {
      if (!v.is_number()) throw ValidationError("observable: table entries must be numbers");
      c.observable.table.push_back(v.get<double>());
    }
  } else {
    throw ValidationError("observable must be a Pauli string or {\"table\": [...]}");
  }
  validate(c);
  return c;
}

/// Parses a circuit document; JSON syntax errors carry the byte position.
inline CircuitIR parse_circuit(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  } catch (const nlohmann::json::type_error& e) {
    throw ValidationError(std::string("bad circuit document: ") + e.what());
  }
  try {
    return circuit_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad circuit document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Cut specifications

/// Cut on `qubit` between op `after` and the next op (after = -1 cuts the
/// wire before any op).
struct WireCut {
  int qubit = 0;
  int after = -1;
  auto operator<=>(const WireCut&) const = default;
};

struct DecompositionOverride {
  bool wire = false;
  int index = 0;  // position within gate_cuts or wire_cuts
  CutDecomposition decomposition;
};

struct CutSpec {
  std::vector<int> gate_cuts;
  std::vector<WireCut> wire_cuts;
  std::vector<DecompositionOverride> overrides;

  int ms() const { return static_cast<int>(gate_cuts.size()); }
  int mt() const { return static_cast<int>(wire_cuts.size()); }
  int total() const { return ms() + mt(); }
  bool empty() const { return gate_cuts.empty() && wire_cuts.empty(); }
};

inline void validate(const CutSpec& spec, const CircuitIR& c) {
  std::set<int> seen;
  for (std::size_t k = 0; k < spec.gate_cuts.size(); ++k) {
    const int i = spec.gate_cuts[k];
    if (i < 0 || i >= static_cast<int>(c.ops.size())) {
      throw ValidationError("gate cut " + std::to_string(k) + ": op " + std::to_string(i) + " does not exist");
    }
    if (gate_arity(c.ops[static_cast<std::size_t>(i)].gate) != 2) {
      throw ValidationError("gate cut " + std::to_string(k) + ": op " + std::to_string(i) + " (" +
                            to_string(c.ops[static_cast<std::size_t>(i)].gate) + ") is not a two-qubit op");
    }
    if (!seen.insert(i).second) throw ValidationError("op " + std::to_string(i) + " is gate-cut twice");
  }
  std::set<WireCut> wires;
  for (std::size_t k = 0; k < spec.wire_cuts.size(); ++k) {
    const WireCut& w = spec.wire_cuts[k];
    if (w.qubit < 0 || w.qubit >= c.n_qubits) {
      throw ValidationError("wire cut " + std::to_string(k) + ": qubit " + std::to_string(w.qubit) + " out of range");
    }
    if (w.after < -1 || w.after >= static_cast<int>(c.ops.size())) {
      throw ValidationError("wire cut " + std::to_string(k) + ": position " + std::to_string(w.after) +
                            " outside [-1, " + std::to_string(static_cast<int>(c.ops.size()) - 1) + "]");
    }
    if (!wires.insert(w).second) throw ValidationError("wire cut " + std::to_string(k) + " is duplicated");
  }
  for (const DecompositionOverride& o : spec.overrides) {
    const int limit = o.wire ? spec.mt() : spec.ms();
    const std::string where = std::string(o.wire ? "wire" : "gate") + " cut " + std::to_string(o.index);
    if (o.index < 0 || o.index >= limit) throw ValidationError("decomposition override for missing " + where);
    const CutTarget expected =
        o.wire ? CutTarget{TargetKind::wire}
               : op_cut_target(c.ops[static_cast<std::size_t>(spec.gate_cuts[static_cast<std::size_t>(o.index)])]);
    if (o.decomposition.target.kind != expected.kind) {
      throw ValidationError("decomposition override for " + where + " targets " + describe(o.decomposition.target) +
                            ", expected " + describe(expected));
    }
  }
}

inline nlohmann::json cut_spec_to_json(const CutSpec& spec) {
  nlohmann::json wires = nlohmann::json::array();
  for (const WireCut& w : spec.wire_cuts) wires.push_back({{"qubit", w.qubit}, {"after", w.after}});
  nlohmann::json out{{"gate_cuts", spec.gate_cuts}, {"wire_cuts", std::move(wires)}};
  if (!spec.overrides.empty()) {
    nlohmann::json ov = nlohmann::json::array();
    for (const auto& o : spec.overrides) {
      ov.push_back({{"cut", o.wire ? "wire" : "gate"}, {"index", o.index}, {"decomposition", o.decomposition}});
    }
    out["decompositions"] = std::move(ov);
  }
  return out;
}

inline CutSpec cut_spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("cut spec must be a JSON object");
  CutSpec spec;
  try {
    if (doc.contains("gate_cuts")) spec.gate_cuts = doc["gate_cuts"].get<std::vector<int>>();
    if (doc.contains("wire_cuts")) {
      const auto& wires = doc["wire_cuts"];
      for (std::size_t k = 0; k < wires.size(); ++k) {
        if (!wires[k].is_object() || !wires[k].contains("qubit") || !wires[k].contains("after")) {
          throw ValidationError("wire cut " + std::to_string(k) + ": needs \"qubit\" and \"after\"");
        }
        spec.wire_cuts.push_back({wires[k]["qubit"].get<int>(), wires[k]["after"].get<int>()});
      }
    }
    if (doc.contains("decompositions")) {
      const auto& ov = doc["decompositions"];
      for (std::size_t k = 0; k < ov.size(); ++k) {
        DecompositionOverride o;
        const std::string kind = ov[k].value("cut", std::string("gate"));
        if (kind != "gate" && kind != "wire") {
          throw ValidationError("decomposition " + std::to_string(k) + ": \"cut\" must be \"gate\" or \"wire\"");
        }
        o.wire = kind == "wire";
        o.index = ov[k].value("index", 0);
        if (!ov[k].contains("decomposition")) {
          throw ValidationError("decomposition " + std::to_string(k) + ": missing \"decomposition\"");
        }
        try {
          o.decomposition = ov[k]["decomposition"].get<CutDecomposition>();
        } catch (const ValidationError& e) {
          throw ValidationError("decomposition " + std::to_string(k) + ": " + e.what());
        }
        spec.overrides.push_back(std::move(o));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad cut spec: ") + e.what());
  }
  return spec;
}

inline CutSpec parse_cut_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return cut_spec_from_json(doc);
}

/// Decomposition used for gate cut k / wire cut k: the override if present,
/// the canonical one otherwise.
inline CutDecomposition gate_cut_decomposition(const CircuitIR& c, const CutSpec& spec, int k) {
  for (const auto& o : spec.overrides) {
    if (!o.wire && o.index == k) return o.decomposition;
  }
  return canonical_decomposition(
      op_cut_target(c.ops[static_cast<std::size_t>(spec.gate_cuts[static_cast<std::size_t>(k)])]));
}

inline CutDecomposition wire_cut_decomposition(const CutSpec& spec, int k) {
  for (const auto& o : spec.overrides) {
    if (o.wire && o.index == k) return o.decomposition;
  }
  return wire_cut();
}

}  // namespace qcut
