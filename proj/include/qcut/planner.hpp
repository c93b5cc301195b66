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

// Cut cost model and exhaustive cut planning under a qubit budget.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/cut_rules.hpp"
#include "qcut/fragment.hpp"

namespace qcut {

enum class CostModel {
  refined,   // prod gamma_k^2 * 16^Mt with each gate cut's own gamma
  cz_bound,  // 9^Ms * 16^Mt, every gate cut charged as a CZ
};

inline const char* to_string(CostModel m) { return m == CostModel::refined ? "refined" : "cz_bound"; }

/// gamma of the canonical decomposition of a cuttable op, in closed form.
inline double op_cut_gamma(const Op& op) {
  switch (op.gate) {
    case GateKind::CZ:
    case GateKind::CNOT: return 3.0;
    case GateKind::EXP: return gate_cut_gamma(op.theta);
    case GateKind::PROJ: return 1.5;
    default: throw ValidationError(std::string("gate ") + to_string(op.gate) + " is not cuttable");
  }
}

inline double plan_cost(const CutSpec& spec, const CircuitIR& c, CostModel model = CostModel::refined) {
  validate(spec, c);
  double cost = std::pow(16.0, spec.mt());
  for (int i : spec.gate_cuts) {
    const double g = model == CostModel::cz_bound ? 3.0 : op_cut_gamma(c.ops[static_cast<std::size_t>(i)]);
    cost *= g * g;
  }
  return cost;
}

struct PlanOptions {
  bool allow_gate = true;
  bool allow_wire = true;
  std::uint64_t max_evaluations = std::uint64_t{1} << 20;
};

struct Plan {
  CutSpec spec;
  double cost = std::numeric_limits<double>::infinity();
  bool feasible = false;
  int max_width = 0;
  std::uint64_t evaluated = 0;  // subsets considered
  bool truncated = false;       // search stopped at the evaluation cap
};

/// A cut position the planner may choose.
struct CutCandidate {
  bool wire = false;
  int op = -1;  // gate candidates
  WireCut position;
};

/// Two-qubit ops in op order, then every wire position between two
/// consecutive ops of a qubit, ordered by (qubit, after).
inline std::vector<CutCandidate> cut_candidates(const CircuitIR& c, const PlanOptions& opt = {}) {
  std::vector<CutCandidate> out;
  if (opt.allow_gate) {
    for (std::size_t i = 0; i < c.ops.size(); ++i) {
      if (gate_arity(c.ops[i].gate) == 2) out.push_back({false, static_cast<int>(i), {}});
    }
  }
  if (opt.allow_wire) {
    for (int q = 0; q < c.n_qubits; ++q) {
      int prev = -1;
      for (std::size_t i = 0; i < c.ops.size(); ++i) {
        const auto& qs = c.ops[i].qubits;
        if (std::find(qs.begin(), qs.end(), q) == qs.end()) continue;
        if (prev >= 0) out.push_back({true, -1, {q, prev}});
        prev = static_cast<int>(i);
      }
    }
  }
  return out;
}

inline CutSpec spec_from_candidates(const std::vector<CutCandidate>& cands, const std::vector<int>& chosen) {
  CutSpec spec;
  for (int k : chosen) {
    const CutCandidate& cand = cands[static_cast<std::size_t>(k)];
    if (cand.wire) {
      spec.wire_cuts.push_back(cand.position);
    } else {
      spec.gate_cuts.push_back(cand.op);
    }
  }
  return spec;
}

inline int fragment_width(const CircuitIR& c, const CutSpec& spec) {
  return fragment(c, spec, std::nullopt, false).max_width;
}

/// Minimal-cost cut set whose fragments fit in `budget` qubits, searched
/// exhaustively by increasing cardinality. Ties go to fewer cuts, then to
/// the lexicographically smallest candidate index list. An infeasible
/// result is returned, not thrown.
inline Plan plan_cuts(const CircuitIR& c, int budget, const PlanOptions& opt = {},
                      CostModel model = CostModel::refined) {
  if (budget < 1) throw ValidationError("qubit budget must be positive");
  validate(c);
  Plan best;
  const int empty_width = fragment_width(c, CutSpec{});
  if (empty_width <= budget) {
    best.feasible = true;
    best.cost = 1.0;
    best.max_width = empty_width;
    best.evaluated = 1;
    return best;
  }
  const auto cands = cut_candidates(c, opt);
  const int nc = static_cast<int>(cands.size());
  std::vector<double> factor(static_cast<std::size_t>(nc));
  for (int k = 0; k < nc; ++k) {
    const CutCandidate& cand = cands[static_cast<std::size_t>(k)];
    if (cand.wire) {
      factor[static_cast<std::size_t>(k)] = 16.0;
    } else {
      const double g = model == CostModel::cz_bound ? 3.0 : op_cut_gamma(c.ops[static_cast<std::size_t>(cand.op)]);
      factor[static_cast<std::size_t>(k)] = g * g;
    }
  }
  std::vector<int> best_chosen;
  const int limit = std::min(nc, 63);
  for (int m = 1; m <= limit && !best.truncated; ++m) {
    std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    const std::uint64_t end = std::uint64_t{1} << limit;
    while (mask < end) {
      if (best.evaluated >= opt.max_evaluations) {
        best.truncated = true;
        break;
      }
      ++best.evaluated;
      std::vector<int> chosen;
      double cost = 1.0;
      for (int k = 0; k < limit; ++k) {
        if (mask >> k & 1U) {
          chosen.push_back(k);
          cost *= factor[static_cast<std::size_t>(k)];
        }
      }
      bool better = !best.feasible;
      if (best.feasible) {
        const double tol = 1e-12 * std::max(cost, best.cost);
        if (cost < best.cost - tol) {
          better = true;
        } else if (std::abs(cost - best.cost) <= tol) {
          better = chosen.size() < best_chosen.size() ||
                   (chosen.size() == best_chosen.size() && chosen < best_chosen);
        }
      }
      if (better) {
        const CutSpec spec = spec_from_candidates(cands, chosen);
        const int w = fragment_width(c, spec);
        if (w <= budget) {
          best.feasible = true;
          best.cost = cost;
          best.spec = spec;
          best.max_width = w;
          best_chosen = chosen;
        }
      }
      // Gosper's hack: next bitmask with the same popcount.
      const std::uint64_t lo = mask & (~mask + 1);
      const std::uint64_t hi = mask + lo;
      if (hi == 0) break;
      mask = (((hi ^ mask) >> 2) / lo) | hi;
    }
  }
  if (nc > limit) best.truncated = true;  // only the first 63 candidates were searched
  if (best.feasible) best.cost = plan_cost(best.spec, c, model);
  return best;
}

/// Replaces every gate cut on op g acting on (a, b) by the four wire cuts
/// (a, g-1), (a, g), (b, g-1), (b, g) that isolate the gate.
inline CutSpec wire_cut_alternative(const CircuitIR& c, const CutSpec& spec) {
  validate(spec, c);
  CutSpec out;
  std::set<WireCut> seen;
  auto add = [&](WireCut w) {
    if (seen.insert(w).second) out.wire_cuts.push_back(w);
  };
  for (const WireCut& w : spec.wire_cuts) add(w);
  for (int g : spec.gate_cuts) {
    for (int q : c.ops[static_cast<std::size_t>(g)].qubits) {
      add({q, g - 1});
      add({q, g});
    }
  }
  return out;
}

inline nlohmann::json plan_to_json(const Plan& plan, const CircuitIR& c, CostModel model) {
  nlohmann::json j{{"feasible", plan.feasible},
                   {"cost_model", to_string(model)},
                   {"evaluated", plan.evaluated},
                   {"truncated", plan.truncated}};
  if (!plan.feasible) return j;
  j["cost"] = plan.cost;
  j["cost_cz_bound"] = plan_cost(plan.spec, c, CostModel::cz_bound);
  j["cost_refined"] = plan_cost(plan.spec, c, CostModel::refined);
  j["spec"] = cut_spec_to_json(plan.spec);
  j["max_width"] = plan.max_width;
  j["ms"] = plan.spec.ms();
  j["mt"] = plan.spec.mt();
  return j;
}

}  // namespace qcut
