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

// Fragment programs: straight-line instruction lists over a small register
// of slots, executed either shot by shot (Born sampling, sign collection,
// terminal computational-basis sample) or exactly (signed linear maps,
// yielding a quasi-distribution over the output bits).

#include <cstdint>
#include <sstream>
#include <variant>
#include <vector>

#include "qcut/channels.hpp"
#include "qcut/density.hpp"
#include "qcut/errors.hpp"
#include "qcut/rng.hpp"

namespace qcut {

/// rho -> U rho U^dagger on one or two slots.
struct GateInstr {
  CMatrix u;
  std::vector<int> slots;
};

/// rho -> P rho P. Shots renormalize and multiply the weight by Tr(P rho P).
struct ProjectInstr {
  CMatrix p;
  std::vector<int> slots;
};

/// Born-sampled Pauli measurement whose outcome is recorded as a cut sign.
struct SignMeasureInstr {
  PauliAxis axis = PauliAxis::Z;
  int slot = 0;
};

/// Discard the slot's qubit and start it again in |0>.
struct ResetInstr {
  int slot = 0;
};

/// Terminal computational-basis measurement of circuit qubit `qubit`.
struct MeasureOutputInstr {
  int slot = 0;
  int qubit = 0;
};

using Instruction = std::variant<GateInstr, ProjectInstr, SignMeasureInstr, ResetInstr, MeasureOutputInstr>;

struct FragmentProgram {
  int width = 0;
  int circuit_qubits = 0;  // n of the full circuit; fixes the y bit layout
  std::vector<Instruction> code;

  int sign_count() const {
    int k = 0;
    for (const auto& ins : code) k += std::holds_alternative<SignMeasureInstr>(ins) ? 1 : 0;
    return k;
  }

  std::vector<int> output_qubits() const {
    std::vector<int> out;
    for (const auto& ins : code) {
      if (const auto* m = std::get_if<MeasureOutputInstr>(&ins)) out.push_back(m->qubit);
    }
    return out;
  }
};

/// Appends the executable form of a local channel acting on `slot`.
inline void append_channel(std::vector<Instruction>& code, const LocalChannel& c, int slot) {
  validate(c);
  switch (c.kind) {
    case ChannelKind::identity: break;
    case ChannelKind::pauli: code.push_back(GateInstr{gates::pauli(c.axis), {slot}}); break;
    case ChannelKind::rotate: code.push_back(GateInstr{gates::quarter_rotation(c.axis, c.sign), {slot}}); break;
    case ChannelKind::hadamard: code.push_back(GateInstr{gates::hadamard(), {slot}}); break;
    case ChannelKind::sign_measure: code.push_back(SignMeasureInstr{c.axis, slot}); break;
    case ChannelKind::postselect: code.push_back(ProjectInstr{gates::axis_projector(c.axis, c.sign), {slot}}); break;
    case ChannelKind::prepare:
      code.push_back(ResetInstr{slot});
      if (c.state != PrepLabel::zero) code.push_back(GateInstr{prep_unitary(c.state), {slot}});
      break;
    case ChannelKind::readout:
      if (c.axis != PauliAxis::I) code.push_back(SignMeasureInstr{c.axis, slot});
      break;
  }
}

/// One execution of a fragment program.
struct ShotOutcome {
  std::uint64_t y = 0;  // circuit qubit q at bit (n - 1 - q); only output qubits set
  std::vector<int> cut_signs;
  double weight = 1.0;  // 0 for a run whose postselection had probability 0

  double sign_product() const {
    int s = 1;
    for (int b : cut_signs) s *= b;
    return s;
  }
};

/// Below this trace a postselected branch counts as impossible.
inline constexpr double kDeadBranchTol = 1e-14;

inline ShotOutcome run_shot(const FragmentProgram& prog, KeyedStream& rng) {
  DensityState state = init_zero_state(prog.width, kShotQubitLimit);
  ShotOutcome out;
  out.cut_signs.reserve(static_cast<std::size_t>(prog.sign_count()));
  const int n = prog.circuit_qubits;
  for (const Instruction& ins : prog.code) {
    if (out.weight == 0.0) {
      if (std::holds_alternative<SignMeasureInstr>(ins)) out.cut_signs.push_back(1);
      continue;
    }
    if (const auto* g = std::get_if<GateInstr>(&ins)) {
      state.conjugate(g->u, g->slots);
    } else if (const auto* p = std::get_if<ProjectInstr>(&ins)) {
      state.apply_map(p->p, p->p, p->slots);
      const double w = state.trace().real();
      if (w <= kDeadBranchTol) {
        out.weight = 0.0;
        out.y = 0;
        continue;
      }
      out.weight *= w;
      state.scale(1.0 / w);
    } else if (const auto* m = std::get_if<SignMeasureInstr>(&ins)) {
      SampledMeasurement r = measure_pauli_sampled(std::move(state), m->axis, m->slot, rng);
      state = std::move(r.state);
      out.cut_signs.push_back(r.sign);
    } else if (const auto* r = std::get_if<ResetInstr>(&ins)) {
      state.reset(r->slot);
    } else if (const auto* o = std::get_if<MeasureOutputInstr>(&ins)) {
      const int bit = sample_z(state, o->slot, rng);
      if (bit) out.y |= std::uint64_t{1} << (n - 1 - o->qubit);
    }
  }
  return out;
}

/// Exact signed output of a program: quasi-probabilities over the bits of
/// `qubits` (qubits[0] most significant), including all cut-sign and
/// postselection weights. Sums to the trace of the final signed operator.
struct ExactOutput {
  std::vector<int> qubits;
  std::vector<double> distribution;
};

inline ExactOutput run_exact(const FragmentProgram& prog, int limit = kOracleQubitLimit) {
  DensityState state = init_zero_state(prog.width, limit);
  ExactOutput out;
  std::vector<int> measured_slots;
  std::vector<bool> closed(static_cast<std::size_t>(prog.width), false);
  auto check_open = [&](int slot) {
    if (slot >= 0 && slot < prog.width && closed[static_cast<std::size_t>(slot)]) {
      throw InternalError("exact execution touched an already measured slot");
    }
  };
  for (const Instruction& ins : prog.code) {
    if (const auto* g = std::get_if<GateInstr>(&ins)) {
      for (int s : g->slots) check_open(s);
      state.conjugate(g->u, g->slots);
    } else if (const auto* p = std::get_if<ProjectInstr>(&ins)) {
      for (int s : p->slots) check_open(s);
      state.apply_map(p->p, p->p, p->slots);
    } else if (const auto* m = std::get_if<SignMeasureInstr>(&ins)) {
      check_open(m->slot);
      const int t[] = {m->slot};
      DensityState plus = state, minus = state;
      const CMatrix pp = gates::axis_projector(m->axis, 1), pm = gates::axis_projector(m->axis, -1);
      plus.apply_map(pp, pp, t);
      minus.apply_map(pm, pm, t);
      state = DensityState(prog.width, plus.matrix() - minus.matrix());
    } else if (const auto* r = std::get_if<ResetInstr>(&ins)) {
      check_open(r->slot);
      state.reset(r->slot);
    } else if (const auto* o = std::get_if<MeasureOutputInstr>(&ins)) {
      check_open(o->slot);
      state.check_target(o->slot);
      closed[static_cast<std::size_t>(o->slot)] = true;
      measured_slots.push_back(o->slot);
      out.qubits.push_back(o->qubit);
    }
  }
  out.distribution = marginal_diagonal(state, measured_slots);
  return out;
}

}  // namespace qcut
