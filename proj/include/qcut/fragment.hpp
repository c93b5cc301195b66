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

// Splitting a cut circuit into fragments and compiling each fragment into a
// program template whose cut endpoints are filled in per term selection.
//
// A wire cut (q, a) splits qubit q's timeline into segments; uncut two-qubit
// ops glue segments together and each connected component is a fragment.
// Times live on a grid: op i happens at 4i+2, an upstream segment is read
// out at 4a+3 and the downstream one is prepared at 4a+5. A segment that
// has finished may hand its slot to one that starts later (qubit reuse).

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/cut_rules.hpp"
#include "qcut/errors.hpp"
#include "qcut/program.hpp"

namespace qcut {

struct Segment {
  int qubit = 0;
  int index = 0;        // position along the qubit's timeline
  std::vector<int> ops;  // op indices, increasing
  int start_cut = -1;   // global cut index of the wire cut that opens it
  int end_cut = -1;     // ... and of the one that closes it
  int start_time = 0;
  int end_time = 0;
  int fragment = -1;
};

/// Placeholder for the channel sequence of `endpoint` (0 = left/upstream,
/// 1 = right/downstream) of cut `cut`, acting on `slot`.
struct CutSlotInstr {
  int cut = 0;
  int endpoint = 0;
  int slot = 0;
};

using TemplateInstr = std::variant<Instruction, CutSlotInstr>;

struct FragmentTemplate {
  int width = 0;
  std::vector<TemplateInstr> code;
};

struct Fragment {
  std::vector<int> segments;
  std::vector<int> output_qubits;  // qubits whose final segment lives here
  std::vector<int> cuts;           // global indices of cuts with an endpoint here
  int width = 0;                   // with qubit reuse
  int width_no_reuse = 0;
  FragmentTemplate reuse;
  FragmentTemplate no_reuse;
};

struct FragmentSet {
  std::vector<Segment> segments;
  std::vector<Fragment> fragments;
  int max_width = 0;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

/// Slot per segment (indexed like `order`) plus the resulting width.
inline std::pair<std::vector<int>, int> assign_slots(const std::vector<Segment>& segs, const std::vector<int>& order,
                                                     bool reuse) {
  std::vector<int> slot(order.size(), -1);
  if (!reuse) {
    std::iota(slot.begin(), slot.end(), 0);
    return {slot, static_cast<int>(order.size())};
  }
  std::vector<std::pair<int, int>> active;  // (end_time, slot)
  std::vector<int> free_slots;
  int width = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Segment& s = segs[static_cast<std::size_t>(order[k])];
    for (auto it = active.begin(); it != active.end();) {
      if (it->first < s.start_time) {
        free_slots.push_back(it->second);
        it = active.erase(it);
      } else {
        ++it;
      }
    }
    int chosen;
    if (free_slots.empty()) {
      chosen = width++;
    } else {
      auto it = std::min_element(free_slots.begin(), free_slots.end());
      chosen = *it;
      free_slots.erase(it);
    }
    slot[k] = chosen;
    active.emplace_back(s.end_time, chosen);
  }
  return {slot, width};
}

struct Event {
  int time;
  int phase;
  int seq;
  TemplateInstr ins;
};

}  // namespace detail

/// Partitions the circuit. With `budget` set, a fragment wider than the
/// budget (after qubit reuse) is a configuration error. `compile = false`
/// only computes the partition and widths (used by the planner).
inline FragmentSet fragment(const CircuitIR& c, const CutSpec& spec, std::optional<int> budget = std::nullopt,
                            bool compile = true) {
  validate(c);
  validate(spec, c);
  FragmentSet fs;
  const int n = c.n_qubits;
  const int ms = spec.ms();

  std::map<int, int> gate_cut_of;  // op index -> global cut index
  for (int k = 0; k < ms; ++k) gate_cut_of[spec.gate_cuts[static_cast<std::size_t>(k)]] = k;

  // Segments, qubit by qubit.
  std::vector<std::vector<int>> seg_of_qubit(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    std::vector<std::pair<int, int>> cuts;  // (after, global index)
    for (int k = 0; k < spec.mt(); ++k) {
      const WireCut& w = spec.wire_cuts[static_cast<std::size_t>(k)];
      if (w.qubit == q) cuts.emplace_back(w.after, ms + k);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
      Segment s;
      s.qubit = q;
      s.index = static_cast<int>(k);
      const int lo = k == 0 ? -1 : cuts[k - 1].first;
      const int hi = k == cuts.size() ? static_cast<int>(c.ops.size()) - 1 : cuts[k].first;
      for (int i = lo + 1; i <= hi; ++i) {
        const auto& qs = c.ops[static_cast<std::size_t>(i)].qubits;
        if (std::find(qs.begin(), qs.end(), q) != qs.end()) s.ops.push_back(i);
      }
      if (k > 0) s.start_cut = cuts[k - 1].second;
      if (k < cuts.size()) s.end_cut = cuts[k].second;
      if (s.end_cut >= 0) {
        s.end_time = 4 * cuts[k].first + 3;
      } else if (!s.ops.empty()) {
        s.end_time = 4 * s.ops.back() + 3;
      }
      if (s.start_cut >= 0) {
        s.start_time = 4 * cuts[k - 1].first + 5;
      } else if (!s.ops.empty()) {
        s.start_time = 4 * s.ops.front() + 1;
      } else {
        s.start_time = s.end_cut >= 0 ? s.end_time - 1 : 0;
      }
      if (s.end_cut < 0 && s.ops.empty()) s.end_time = s.start_time;
      seg_of_qubit[static_cast<std::size_t>(q)].push_back(static_cast<int>(fs.segments.size()));
      fs.segments.push_back(std::move(s));
    }
  }
  auto segment_at = [&](int q, int op) {
    for (int id : seg_of_qubit[static_cast<std::size_t>(q)]) {
      const auto& ops = fs.segments[static_cast<std::size_t>(id)].ops;
      if (std::binary_search(ops.begin(), ops.end(), op)) return id;
    }
    throw InternalError("op not found on its qubit's timeline");
  };

  detail::UnionFind uf(fs.segments.size());
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const Op& op = c.ops[i];
    if (op.qubits.size() != 2 || gate_cut_of.count(static_cast<int>(i))) continue;
    uf.unite(segment_at(op.qubits[0], static_cast<int>(i)), segment_at(op.qubits[1], static_cast<int>(i)));
  }
  std::map<int, int> fragment_of_root;
  for (std::size_t s = 0; s < fs.segments.size(); ++s) {
    const int root = uf.find(static_cast<int>(s));
    auto [it, inserted] = fragment_of_root.emplace(root, static_cast<int>(fs.fragments.size()));
    if (inserted) fs.fragments.emplace_back();
    fs.segments[s].fragment = it->second;
    fs.fragments[static_cast<std::size_t>(it->second)].segments.push_back(static_cast<int>(s));
  }

  for (std::size_t f = 0; f < fs.fragments.size(); ++f) {
    Fragment& frag = fs.fragments[f];
    std::vector<int> order = frag.segments;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const Segment& sa = fs.segments[static_cast<std::size_t>(a)];
      const Segment& sb = fs.segments[static_cast<std::size_t>(b)];
      return std::tie(sa.start_time, sa.qubit, sa.index) < std::tie(sb.start_time, sb.qubit, sb.index);
    });
    std::vector<int> cuts;
    for (int id : frag.segments) {
      const Segment& s = fs.segments[static_cast<std::size_t>(id)];
      if (s.end_cut < 0) frag.output_qubits.push_back(s.qubit);
      if (s.start_cut >= 0) cuts.push_back(s.start_cut);
      if (s.end_cut >= 0) cuts.push_back(s.end_cut);
      for (int op : s.ops) {
        auto it = gate_cut_of.find(op);
        if (it != gate_cut_of.end()) cuts.push_back(it->second);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    frag.cuts = std::move(cuts);
    std::sort(frag.output_qubits.begin(), frag.output_qubits.end());

    if (!compile) {
      frag.width = detail::assign_slots(fs.segments, order, true).second;
      frag.width_no_reuse = static_cast<int>(order.size());
    }
    for (bool reuse : {true, false}) {
      if (!compile) break;
      auto [slots, width] = detail::assign_slots(fs.segments, order, reuse);
      std::map<int, int> slot_of;  // segment id -> slot
      for (std::size_t k = 0; k < order.size(); ++k) slot_of[order[k]] = slots[k];
      std::vector<bool> slot_used(static_cast<std::size_t>(width), false);
      std::vector<detail::Event> events;
      int seq = 0;
      auto push = [&](int time, int phase, TemplateInstr ins) {
        events.push_back({time, phase, seq++, std::move(ins)});
      };
      for (std::size_t k = 0; k < order.size(); ++k) {
        const Segment& s = fs.segments[static_cast<std::size_t>(order[k])];
        const int slot = slots[k];
        if (slot_used[static_cast<std::size_t>(slot)]) push(s.start_time, 0, Instruction{ResetInstr{slot}});
        slot_used[static_cast<std::size_t>(slot)] = true;
        if (s.start_cut >= 0) push(s.start_time, 0, CutSlotInstr{s.start_cut, 1, slot});
        if (s.end_cut >= 0) {
          push(s.end_time, 2, CutSlotInstr{s.end_cut, 0, slot});
        } else {
          if (c.observable.kind == OutputFunction::Kind::pauli) {
            const PauliAxis a = c.observable.paulis[static_cast<std::size_t>(s.qubit)];
            if (a == PauliAxis::Y) push(s.end_time, 3, Instruction{GateInstr{gates::phase_sdg(), {slot}}});
            if (a == PauliAxis::X || a == PauliAxis::Y) {
              push(s.end_time, 3, Instruction{GateInstr{gates::hadamard(), {slot}}});
            }
          }
          push(s.end_time, 3, Instruction{MeasureOutputInstr{slot, s.qubit}});
        }
        for (int i : s.ops) {
          const Op& op = c.ops[static_cast<std::size_t>(i)];
          const int time = 4 * i + 2;
          auto cut = gate_cut_of.find(i);
          if (cut != gate_cut_of.end()) {
            const int endpoint = op.qubits[0] == s.qubit ? 0 : 1;
            push(time, 1, CutSlotInstr{cut->second, endpoint, slot});
            continue;
          }
          if (op.qubits.size() == 2 && op.qubits[0] != s.qubit) continue;  // emitted from the first qubit
          std::vector<int> targets;
          for (int q : op.qubits) targets.push_back(slot_of.at(q == s.qubit ? order[k] : segment_at(q, i)));
          if (op.gate == GateKind::PROJ) {
            push(time, 1, Instruction{ProjectInstr{op_matrix(op), targets}});
          } else {
            push(time, 1, Instruction{GateInstr{op_matrix(op), targets}});
          }
        }
      }
      std::stable_sort(events.begin(), events.end(), [](const detail::Event& a, const detail::Event& b) {
        return std::tie(a.time, a.phase, a.seq) < std::tie(b.time, b.phase, b.seq);
      });
      FragmentTemplate t;
      t.width = width;
      for (auto& e : events) t.code.push_back(std::move(e.ins));
      if (reuse) {
        frag.width = width;
        frag.reuse = std::move(t);
      } else {
        frag.width_no_reuse = width;
        frag.no_reuse = std::move(t);
      }
    }
    fs.max_width = std::max(fs.max_width, frag.width);
    if (budget && frag.width > *budget) {
      std::ostringstream msg;
      msg << "fragment " << f << " needs " << frag.width << " qubits, budget is " << *budget;
      throw ConfigurationError(msg.str());
    }
  }
  return fs;
}

/// A circuit with its cut spec, fragments and the decomposition of every
/// cut. Global cut index: gate cuts in spec order, then wire cuts.
class CutCircuit {
 public:
  CutCircuit(CircuitIR circuit, CutSpec spec, std::optional<int> budget = std::nullopt)
      : circuit_(std::move(circuit)), spec_(std::move(spec)) {
    fragments_ = fragment(circuit_, spec_, budget);
    for (int k = 0; k < spec_.ms(); ++k) decompositions_.push_back(gate_cut_decomposition(circuit_, spec_, k));
    for (int k = 0; k < spec_.mt(); ++k) decompositions_.push_back(wire_cut_decomposition(spec_, k));
    for (const auto& d : decompositions_) {
      if (d.terms.empty()) throw ValidationError("a cut decomposition has no terms");
    }
  }

  const CircuitIR& circuit() const { return circuit_; }
  const CutSpec& spec() const { return spec_; }
  const FragmentSet& fragments() const { return fragments_; }
  const std::vector<CutDecomposition>& decompositions() const { return decompositions_; }
  int cut_count() const { return static_cast<int>(decompositions_.size()); }
  std::size_t fragment_count() const { return fragments_.fragments.size(); }

  int term_count(int cut) const { return static_cast<int>(decompositions_[static_cast<std::size_t>(cut)].size()); }

  /// Number of term selections (product of per-cut term counts).
  std::uint64_t combinations() const {
    std::uint64_t t = 1;
    for (const auto& d : decompositions_) t *= d.size();
    return t;
  }

  /// Mixed-radix index with cut 0 most significant.
  std::uint64_t encode(const std::vector<int>& sel) const {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < decompositions_.size(); ++k) idx = idx * decompositions_[k].size() + sel[k];
    return idx;
  }

  std::vector<int> decode(std::uint64_t idx) const {
    std::vector<int> sel(decompositions_.size());
    for (std::size_t k = decompositions_.size(); k-- > 0;) {
      sel[k] = static_cast<int>(idx % decompositions_[k].size());
      idx /= decompositions_[k].size();
    }
    return sel;
  }

  /// Product of the selected terms' coefficients.
  double coefficient(const std::vector<int>& sel) const {
    double c = 1;
    for (std::size_t k = 0; k < decompositions_.size(); ++k) {
      c *= decompositions_[k].terms[static_cast<std::size_t>(sel[k])].coefficient;
    }
    return c;
  }

  /// Largest |X| a uniformly sampled shot can produce: prod_k T_k max|c_k|
  /// (3^Ms 4^Mt for CZ gate cuts and wire cuts). With importance sampling
  /// it is prod_k gamma_k.
  double magnitude_bound(bool importance = false) const {
    double b = 1;
    for (const auto& d : decompositions_) {
      if (importance) {
        b *= d.gamma;
      } else {
        double m = 0;
        for (const auto& t : d.terms) m = std::max(m, std::abs(t.coefficient));
        b *= static_cast<double>(d.size()) * m;
      }
    }
    return b;
  }

  /// Program for fragment `f` under a selection (entries for cuts not
  /// touching `f` are ignored).
  FragmentProgram instantiate(std::size_t f, const std::vector<int>& sel, bool reuse = true) const {
    const Fragment& frag = fragments_.fragments.at(f);
    const FragmentTemplate& t = reuse ? frag.reuse : frag.no_reuse;
    FragmentProgram prog;
    prog.width = t.width;
    prog.circuit_qubits = circuit_.n_qubits;
    prog.code.reserve(t.code.size() + 2 * frag.cuts.size());
    for (const TemplateInstr& ti : t.code) {
      if (const auto* fixed = std::get_if<Instruction>(&ti)) {
        prog.code.push_back(*fixed);
        continue;
      }
      const auto& cs = std::get<CutSlotInstr>(ti);
      const CutTerm& term = decompositions_[static_cast<std::size_t>(cs.cut)]
                                .terms[static_cast<std::size_t>(sel[static_cast<std::size_t>(cs.cut)])];
      for (const LocalChannel& ch : cs.endpoint == 0 ? term.left : term.right) append_channel(prog.code, ch, cs.slot);
    }
    return prog;
  }

  /// Key of a selection restricted to the cuts touching fragment `f`.
  std::uint64_t local_key(std::size_t f, const std::vector<int>& sel) const {
    std::uint64_t key = 0;
    for (int k : fragments_.fragments[f].cuts) {
      key = key * decompositions_[static_cast<std::size_t>(k)].size() + sel[static_cast<std::size_t>(k)];
    }
    return key;
  }

  std::uint64_t local_combinations(std::size_t f) const {
    std::uint64_t t = 1;
    for (int k : fragments_.fragments[f].cuts) t *= decompositions_[static_cast<std::size_t>(k)].size();
    return t;
  }

  /// Inverse of local_key: fills the entries of `sel` for fragment `f`'s cuts.
  void apply_local_key(std::size_t f, std::uint64_t key, std::vector<int>& sel) const {
    const auto& cuts = fragments_.fragments[f].cuts;
    for (std::size_t i = cuts.size(); i-- > 0;) {
      const std::size_t k = static_cast<std::size_t>(cuts[i]);
      sel[k] = static_cast<int>(key % decompositions_[k].size());
      key /= decompositions_[k].size();
    }
  }

 private:
  CircuitIR circuit_;
  CutSpec spec_;
  FragmentSet fragments_;
  std::vector<CutDecomposition> decompositions_;
};

}  // namespace qcut
