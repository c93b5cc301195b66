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

// qcut command-line front end.
//
// Exit codes: 0 success, 1 numeric or statistical failure, 2 input error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcut/qcut.hpp"

namespace {

using namespace qcut;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitInput = 2;

constexpr double kVerifyTolerance = 1e-10;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::uint64_t kCompareWarnShots = 100;

struct Config {
  std::string circuit_path;
  std::string cuts_path;
  bool auto_plan = false;
  int budget = 0;
  std::string mode = "montecarlo";
  double epsilon = 0.1;
  double delta = 0.05;
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out_dir;
  bool no_timestamp = false;
  bool no_gate_cuts = false;
  bool no_wire_cuts = false;
  bool importance = false;
  bool local = false;
  std::string csv_path;
  std::string shot_log_path;
  std::string cost_model = "refined";
  std::string spec_out;
  std::string time_cuts_path;
  int seeds = 10;

  // set from the parsed options
  bool shots_given = false;
  bool epsilon_given = false;
  bool budget_given = false;
};

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("QCUT_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 10);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ValidationError(std::string("QCUT_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

CircuitIR load_circuit(const std::string& path) {
  try {
    return parse_circuit(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

CutSpec load_spec(const std::string& path, const CircuitIR& c) {
  CutSpec spec;
  try {
    spec = parse_cut_spec(read_file(path));
    validate(spec, c);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return spec;
}

PlanOptions plan_options(const Config& cfg) {
  PlanOptions opt;
  opt.allow_gate = !cfg.no_gate_cuts;
  opt.allow_wire = !cfg.no_wire_cuts;
  return opt;
}

CostModel cost_model(const Config& cfg) { return cfg.cost_model == "cz_bound" ? CostModel::cz_bound : CostModel::refined; }

// Cut spec from --cuts, --auto-plan, or the circuit's flagged ops.
CutSpec choose_spec(const Config& cfg, const CircuitIR& c, json& report) {
  if (!cfg.cuts_path.empty()) {
    report["cuts_source"] = cfg.cuts_path;
    return load_spec(cfg.cuts_path, c);
  }
  if (cfg.auto_plan) {
    const Plan plan = plan_cuts(c, cfg.budget, plan_options(cfg), cost_model(cfg));
    if (!plan.feasible) {
      throw ConfigurationError("no cut plan fits " + std::to_string(cfg.budget) + " qubits per fragment" +
                               (plan.truncated ? " (search truncated)" : ""));
    }
    report["cuts_source"] = "auto-plan";
    report["plan"] = plan_to_json(plan, c, cost_model(cfg));
    return plan.spec;
  }
  CutSpec spec;
  spec.gate_cuts = c.flagged_ops();
  report["cuts_source"] = "flagged ops";
  return spec;
}

std::optional<int> width_budget(const Config& cfg) {
  if (cfg.budget_given) return cfg.budget;
  return std::nullopt;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json provenance(const Config& cfg, const std::string& command) {
  json p{{"tool", "qcut"},
         {"version", kVersion},
         {"circuit_format", kCircuitFormatVersion},
         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION)},
         {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                               std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
         {"command", command}};
  if (!cfg.no_timestamp) p["timestamp"] = timestamp_utc();
  return p;
}

json circuit_summary(const Config& cfg, const CircuitIR& c) {
  return {{"path", cfg.circuit_path},
          {"n", c.n_qubits},
          {"ops", c.ops.size()},
          {"observable", c.observable.label()}};
}

void emit_report(const Config& cfg, const json& report, const std::string& name) {
  if (cfg.out_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigurationError("cannot create output directory " + cfg.out_dir + ": " + ec.message());
  const std::string path = (std::filesystem::path(cfg.out_dir) / name).string();
  write_file(path, report.dump(2) + "\n");
  std::printf("report written to %s\n", path.c_str());
}

// --------------------------------------------------------------------------
// verify

struct CheckedCut {
  std::string label;
  CutDecomposition decomposition;
  CutTarget target;
  bool overridden = false;
};

std::vector<CheckedCut> cuts_to_check(const CircuitIR& c, const CutSpec& spec) {
  std::vector<CheckedCut> out;
  auto overridden = [&](bool wire, int k) {
    for (const auto& o : spec.overrides) {
      if (o.wire == wire && o.index == k) return true;
    }
    return false;
  };
  for (int k = 0; k < spec.ms(); ++k) {
    const int op = spec.gate_cuts[static_cast<std::size_t>(k)];
    const CutTarget t = op_cut_target(c.ops[static_cast<std::size_t>(op)]);
    out.push_back({"gate cut " + std::to_string(k) + " (op " + std::to_string(op) + ", " + describe(t) + ")",
                   gate_cut_decomposition(c, spec, k), t, overridden(false, k)});
  }
  for (int k = 0; k < spec.mt(); ++k) {
    const WireCut& w = spec.wire_cuts[static_cast<std::size_t>(k)];
    out.push_back({"wire cut " + std::to_string(k) + " (qubit " + std::to_string(w.qubit) + " after op " +
                       std::to_string(w.after) + ")",
                   wire_cut_decomposition(spec, k), CutTarget{TargetKind::wire}, overridden(true, k)});
  }
  return out;
}

int verify_spec(const Config& cfg, const CircuitIR& c, const CutSpec& spec, json& report) {
  json rows = json::array();
  bool ok = true;
  const auto cuts = cuts_to_check(c, spec);
  if (cuts.empty()) std::printf("no cuts to verify\n");
  for (const auto& cut : cuts) {
    const double r = verify_cut(cut.decomposition, target_ptm(cut.target));
    const bool pass = r < kVerifyTolerance;
    json row{{"cut", cut.label},
             {"terms", cut.decomposition.size()},
             {"gamma", cut.decomposition.gamma},
             {"residual", r},
             {"passed", pass},
             {"overridden", cut.overridden}};
    std::printf("%s %s: %zu terms, gamma %.6g, residual %.3e\n", pass ? "ok  " : "FAIL", cut.label.c_str(),
                cut.decomposition.size(), cut.decomposition.gamma, r);
    if (!pass) {
      ok = false;
      const auto diffs = diff_terms(canonical_decomposition(cut.target), cut.decomposition);
      for (const auto& d : diffs) std::printf("     %s\n", d.c_str());
      row["differences"] = diffs;
    }
    rows.push_back(std::move(row));
  }
  report["tolerance"] = kVerifyTolerance;
  report["cuts"] = std::move(rows);
  report["passed"] = ok;
  emit_report(cfg, report, "verify.json");
  return ok ? kExitOk : kExitNumeric;
}

int cmd_verify(const Config& cfg) {
  json report{{"provenance", provenance(cfg, "verify")}};
  const CircuitIR c = load_circuit(cfg.circuit_path);
  report["circuit"] = circuit_summary(cfg, c);
  const CutSpec spec = choose_spec(cfg, c, report);
  report["spec"] = cut_spec_to_json(spec);
  return verify_spec(cfg, c, spec, report);
}

// --------------------------------------------------------------------------
// run

// Sample budget for a sampling mode: explicit --shots or the Hoeffding bound.
json sampling_budget(const Config& cfg, const CutCircuit& cc, std::uint64_t& shots) {
  if (cfg.shots_given) {
    shots = cfg.shots;
    return {{"source", "explicit"}, {"shots", shots}};
  }
  const int ms = cc.spec().ms(), mt = cc.spec().mt();
  SampleBudget b = sample_budget(ms, mt, cfg.epsilon, cfg.delta);
  json j;
  // Uniform term sampling can exceed 3^Ms 4^Mt for non-CZ gate cuts.
  const double mag = cc.magnitude_bound(cfg.importance);
  if (mag > b.magnitude * (1 + 1e-12)) {
    b = magnitude_budget(mag, cfg.epsilon, cfg.delta, ms, mt);
    j = budget_to_json(b);
    j["formula"] = "ceil(2 * B^2 / epsilon^2 * ln(1 / (2 * delta))), B = per-shot magnitude bound";
  } else {
    j = budget_to_json(b);
  }
  j["source"] = "hoeffding";
  shots = b.n;
  return j;
}

void write_shot_outputs(const Config& cfg, const std::vector<ShotRecord>& records) {
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, shot_csv(records));
  if (!cfg.shot_log_path.empty()) write_file(cfg.shot_log_path, encode_shot_log(records));
}

int cmd_run(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  json report{{"provenance", provenance(cfg, "run")}, {"mode", cfg.mode}};
  const CircuitIR c = load_circuit(cfg.circuit_path);
  report["circuit"] = circuit_summary(cfg, c);
  const CutSpec spec = choose_spec(cfg, c, report);

  if (cfg.mode == "verify") {
    report["spec"] = cut_spec_to_json(spec);
    return verify_spec(cfg, c, spec, report);
  }
  if (cfg.mode == "cost") {
    const double cz = plan_cost(spec, c, CostModel::cz_bound);
    const double refined = plan_cost(spec, c, CostModel::refined);
    report["spec"] = cut_spec_to_json(spec);
    report["cost"] = {{"cz_bound", cz}, {"refined", refined}};
    std::printf("%.17g\n", cz);
    std::printf("cost (cz_bound) %.17g, cost (refined) %.17g, %d gate cuts, %d wire cuts\n", cz, refined, spec.ms(),
                spec.mt());
    emit_report(cfg, report, "report.json");
    return kExitOk;
  }

  const CutCircuit cc(c, spec, width_budget(cfg));
  report["cuts"] = fragments_to_json(cc);
  report["cost"] = {{"cz_bound", plan_cost(spec, c, CostModel::cz_bound)},
                    {"refined", plan_cost(spec, c, CostModel::refined)}};

  std::optional<double> exact;
  if (c.n_qubits <= kOracleQubitLimit) exact = exact_expectation(c);

  const std::uint64_t seed = resolve_seed(cfg);
  SampleOptions opt;
  opt.seed = seed;
  opt.threads = cfg.threads;
  opt.importance = cfg.importance;
  opt.record_shots = !cfg.csv_path.empty() || !cfg.shot_log_path.empty();

  Estimate est;
  int status = kExitOk;
  if (cfg.mode == "oracle") {
    est.method = "oracle";
    est.mean = exact_cut_expectation(cc);
  } else if (cfg.mode == "montecarlo") {
    std::uint64_t shots = 0;
    report["budget"] = sampling_budget(cfg, cc, shots);
    report["seed"] = seed;
    report["importance"] = cfg.importance;
    const auto r = run_monte_carlo(cc, shots, opt);
    est = r.estimate;
    report["magnitude_bound"] = r.magnitude_bound;
    write_shot_outputs(cfg, r.records);
  } else if (cfg.mode == "allocation" && cfg.local) {
    std::uint64_t shots = 0;
    report["budget"] = sampling_budget(cfg, cc, shots);
    report["seed"] = seed;
    const auto r = run_local_allocation(cc, shots, opt);
    est = r.estimate;
    json units = json::array();
    for (const auto& u : r.units) {
      units.push_back({{"fragment", u.fragment},
                       {"selection", u.selection},
                       {"count", u.count},
                       {"mean", u.mean},
                       {"variance", u.variance}});
    }
    report["allocation"] = {{"estimator", "local"},
                            {"requested_shots", r.requested_shots},
                            {"shots_per_unit", r.shots_per_unit},
                            {"rounded", r.rounded},
                            {"units", std::move(units)}};
    write_shot_outputs(cfg, r.records);
  } else if (cfg.mode == "allocation") {
    std::uint64_t shots = 0;
    report["budget"] = sampling_budget(cfg, cc, shots);
    report["seed"] = seed;
    const auto r = run_equal_allocation(cc, shots, opt);
    est = r.estimate;
    report["allocation"] = {{"estimator", r.estimator == AllocationEstimator::factorized ? "factorized" : "joint"},
                            {"requested_shots", r.requested_shots},
                            {"shots_per_term", r.shots_per_term},
                            {"rounded", r.rounded}};
    if (r.rounded) {
      std::fprintf(stderr, "note: %llu shots rounded up to %llu per term selection\n",
                   static_cast<unsigned long long>(r.requested_shots),
                   static_cast<unsigned long long>(r.shots_per_term));
    }
    write_shot_outputs(cfg, r.records);
  }
  report["estimate"] = estimate_to_json(est);

  std::printf("%s: %.10g +/- %.3g (%llu shots)\n", est.method.c_str(), est.mean, est.std_error,
              static_cast<unsigned long long>(est.shots));
  if (exact) {
    const double dev = std::abs(est.mean - *exact);
    report["exact"] = *exact;
    report["deviation"] = dev;
    std::printf("exact: %.10g, deviation %.3e\n", *exact, dev);
    if (cfg.mode == "oracle" && dev > 1e-9) {
      std::printf("FAIL: cut reconstruction disagrees with the uncut circuit\n");
      status = kExitNumeric;
    }
    if (cfg.mode == "montecarlo" && !cfg.shots_given) {
      const bool within = dev <= cfg.epsilon;
      report["within_epsilon"] = within;
      if (!within) {
        std::printf("FAIL: deviation exceeds epsilon %.3g\n", cfg.epsilon);
        status = kExitNumeric;
      }
    }
  } else {
    report["exact"] = nullptr;
  }
  if (!cfg.no_timestamp) {
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  emit_report(cfg, report, "report.json");
  return status;
}

// --------------------------------------------------------------------------
// plan

int cmd_plan(const Config& cfg) {
  json report{{"provenance", provenance(cfg, "plan")}};
  const CircuitIR c = load_circuit(cfg.circuit_path);
  report["circuit"] = circuit_summary(cfg, c);
  report["budget"] = cfg.budget;
  const Plan plan = plan_cuts(c, cfg.budget, plan_options(cfg), cost_model(cfg));
  report["plan"] = plan_to_json(plan, c, cost_model(cfg));
  if (!plan.feasible) {
    std::printf("no cut plan fits %d qubits per fragment%s\n", cfg.budget, plan.truncated ? " (search truncated)" : "");
    emit_report(cfg, report, "plan.json");
    return kExitInput;
  }
  std::printf("%d gate cuts, %d wire cuts, max fragment width %d, cost %.17g (%s)\n", plan.spec.ms(), plan.spec.mt(),
              plan.max_width, plan.cost, to_string(cost_model(cfg)));
  std::printf("%s\n", cut_spec_to_json(plan.spec).dump().c_str());
  if (!cfg.spec_out.empty()) write_file(cfg.spec_out, cut_spec_to_json(plan.spec).dump(2) + "\n");
  emit_report(cfg, report, "plan.json");
  return kExitOk;
}

// --------------------------------------------------------------------------
// compare

// Worst-case variance bounds for equal allocation: 15/(2N) for one CZ-type
// gate cut, 2048/N for up to four wire cuts.
std::optional<double> variance_bound(const CutCircuit& cc, std::uint64_t n) {
  const CutSpec& s = cc.spec();
  if (s.ms() == 1 && s.mt() == 0) {
    const TargetKind k = cc.decompositions()[0].target.kind;
    if (k == TargetKind::cz || k == TargetKind::cnot) return 15.0 / (2.0 * static_cast<double>(n));
  }
  if (s.ms() == 0 && s.mt() >= 1 && s.mt() <= 4) return 2048.0 / static_cast<double>(n);
  return std::nullopt;
}

// Time-like counterpart of a gate-cut plan: one wire cut on the gate's
// second qubit right after the gate.
CutSpec single_wire_alternative(const CircuitIR& c, const CutSpec& spec) {
  CutSpec out;
  out.wire_cuts = spec.wire_cuts;
  for (int g : spec.gate_cuts) out.wire_cuts.push_back({c.ops[static_cast<std::size_t>(g)].qubits[1], g});
  validate(out, c);
  return out;
}

int cmd_compare(const Config& cfg) {
  json report{{"provenance", provenance(cfg, "compare")}};
  const CircuitIR c = load_circuit(cfg.circuit_path);
  report["circuit"] = circuit_summary(cfg, c);
  const CutSpec space = choose_spec(cfg, c, report);
  if (space.ms() == 0) throw ValidationError("compare needs a plan with at least one gate cut");
  const CutSpec time = cfg.time_cuts_path.empty() ? single_wire_alternative(c, space) : load_spec(cfg.time_cuts_path, c);
  if (time.ms() != 0 || time.mt() == 0) throw ValidationError("the time-like plan must contain only wire cuts");

  const std::uint64_t n = cfg.shots_given ? cfg.shots : 60000;
  if (n < kCompareWarnShots) {
    std::fprintf(stderr,
                 "warning: N = %llu is below %llu; the normal approximation behind the variance bounds does not "
                 "apply\n",
                 static_cast<unsigned long long>(n), static_cast<unsigned long long>(kCompareWarnShots));
    report["warning"] = "N below 100: normal approximation does not apply";
  }
  if (cfg.seeds < 1) throw ValidationError("--seeds must be at least 1");

  const CutCircuit plans[2] = {CutCircuit(c, space, width_budget(cfg)), CutCircuit(c, time, width_budget(cfg))};
  const char* names[2] = {"space", "time"};
  json plan_info = json::object();
  for (int p = 0; p < 2; ++p) {
    plan_info[names[p]] = fragments_to_json(plans[p]);
    const auto b = variance_bound(plans[p], 1);
    plan_info[names[p]]["variance_bound_times_n"] = b ? json(*b) : json(nullptr);
  }
  report["plans"] = std::move(plan_info);
  report["shots"] = n;

  const std::uint64_t first = resolve_seed(cfg);
  std::printf("%-6s %-6s %-9s %-14s %-12s %-14s %s\n", "seed", "plan", "N", "variance", "N*variance", "bound",
              "satisfied");
  json rows = json::array();
  bool all_ok = true;
  int ordered = 0;
  for (int s = 0; s < cfg.seeds; ++s) {
    SampleOptions opt;
    opt.seed = first + static_cast<std::uint64_t>(s);
    opt.threads = cfg.threads;
    double var[2];
    for (int p = 0; p < 2; ++p) {
      const auto r = run_equal_allocation(plans[p], n, opt);
      // allocation may round N up to a multiple of the term count
      const std::uint64_t used = r.estimate.shots;
      const auto bound = variance_bound(plans[p], used);
      var[p] = r.estimate.variance;
      const bool ok = !bound || var[p] <= *bound;
      all_ok &= ok;
      char bound_text[32] = "-";
      if (bound) std::snprintf(bound_text, sizeof bound_text, "%.6e", *bound);
      std::printf("%-6llu %-6s %-9llu %-14.6e %-12.6g %-14s %s\n", static_cast<unsigned long long>(opt.seed),
                  names[p], static_cast<unsigned long long>(used), var[p], var[p] * static_cast<double>(used),
                  bound_text, bound ? (ok ? "yes" : "NO") : "n/a");
      rows.push_back({{"seed", opt.seed},
                      {"plan", names[p]},
                      {"shots", used},
                      {"mean", r.estimate.mean},
                      {"variance", var[p]},
                      {"bound", bound ? json(*bound) : json(nullptr)},
                      {"satisfied", bound ? json(ok) : json(nullptr)}});
    }
    ordered += var[0] < var[1];
  }
  std::printf("space-like variance below time-like in %d/%d seeds\n", ordered, cfg.seeds);
  report["rows"] = std::move(rows);
  report["space_below_time"] = ordered;
  report["seeds"] = cfg.seeds;
  report["bounds_satisfied"] = all_ok;
  emit_report(cfg, report, "compare.json");
  return all_ok ? kExitOk : kExitNumeric;
}

// --------------------------------------------------------------------------
// generate

struct GenerateConfig {
  std::string kind = "cluster";
  int k = 2;
  int n = 6;
  int p = 1;
  int i = 0;
  int j = 3;
  double beta = 0.4;
  double gamma = 0.3;
  int ops = 20;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_generate(const GenerateConfig& g) {
  CircuitIR c;
  if (g.kind == "cluster") {
    c = cluster_demo(g.k, g.seed);
  } else if (g.kind == "qaoa") {
    c = qaoa_example(g.n, g.i, g.j, g.p, std::vector<double>(static_cast<std::size_t>(std::max(g.p, 0)), g.beta),
                     std::vector<double>(static_cast<std::size_t>(std::max(g.p, 0)), g.gamma));
  } else {
    RandomCircuitOptions opt;
    opt.n_qubits = g.n;
    opt.ops = g.ops;
    c = random_circuit(opt, g.seed);
  }
  const std::string text = circuit_to_json(c).dump(2) + "\n";
  if (g.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(g.out, text);
  }
  return kExitOk;
}

// --------------------------------------------------------------------------

void add_circuit_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--circuit", cfg.circuit_path, "Circuit JSON file")->required();
  auto* cuts = sub->add_option("--cuts", cfg.cuts_path, "Cut spec JSON file (default: the circuit's flagged ops)");
  auto* autoplan = sub->add_flag("--auto-plan", cfg.auto_plan, "Choose cuts with the planner (needs --budget)");
  auto* budget = sub->add_option("--budget", cfg.budget, "Qubits per fragment");
  autoplan->needs(budget);
  autoplan->excludes(cuts);
  sub->add_flag("--no-gate-cuts", cfg.no_gate_cuts, "Planner: wire cuts only");
  sub->add_flag("--no-wire-cuts", cfg.no_wire_cuts, "Planner: gate cuts only");
  sub->add_option("--cost-model", cfg.cost_model, "Planner cost model")
      ->check(CLI::IsMember({"refined", "cz_bound"}));
  sub->add_option("--out", cfg.out_dir, "Directory for the JSON report");
  sub->add_flag("--no-timestamp", cfg.no_timestamp, "Leave timestamps and wall time out of the report");
}

void add_sampling_options(CLI::App* sub, Config& cfg) {
  auto* eps = sub->add_option("--epsilon", cfg.epsilon, "Target accuracy (default 0.1)");
  auto* del = sub->add_option("--delta", cfg.delta, "Failure probability (default 0.05)");
  auto* shots = sub->add_option("--shots", cfg.shots, "Explicit shot count");
  shots->excludes(eps)->excludes(del);
  sub->add_option("--seed", cfg.seed, "RNG seed (default: QCUT_SEED, else 1)");
  sub->add_option("--threads", cfg.threads, "Worker threads; results do not depend on it")
      ->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcut: circuit cutting with gate and wire cuts"};
  app.set_version_flag("--version", qcut::kVersion);
  app.require_subcommand(1);
  Config cfg;
  GenerateConfig gen;

  auto* verify = app.add_subcommand("verify", "Check every cut decomposition against its target channel");
  add_circuit_options(verify, cfg);

  auto* run = app.add_subcommand("run", "Estimate the observable with the chosen cuts");
  add_circuit_options(run, cfg);
  add_sampling_options(run, cfg);
  run->add_option("--mode", cfg.mode, "verify | oracle | montecarlo | allocation | cost (default montecarlo)")
      ->check(CLI::IsMember({"verify", "oracle", "montecarlo", "allocation", "cost"}));
  run->add_flag("--importance", cfg.importance, "Monte Carlo: draw terms with probability |c|/gamma");
  run->add_flag("--local", cfg.local, "Allocation: split shots per fragment and local term choice, not per term");
  run->add_option("--csv", cfg.csv_path, "Per-shot CSV output");
  run->add_option("--shot-log", cfg.shot_log_path, "Binary per-shot log output");

  auto* plan = app.add_subcommand("plan", "Search for the cheapest cuts under a width budget");
  plan->add_option("--circuit", cfg.circuit_path, "Circuit JSON file")->required();
  plan->add_option("--budget", cfg.budget, "Qubits per fragment")->required();
  plan->add_flag("--no-gate-cuts", cfg.no_gate_cuts, "Wire cuts only");
  plan->add_flag("--no-wire-cuts", cfg.no_wire_cuts, "Gate cuts only");
  plan->add_option("--cost-model", cfg.cost_model, "refined | cz_bound")
      ->check(CLI::IsMember({"refined", "cz_bound"}));
  plan->add_option("--spec-out", cfg.spec_out, "Write the chosen cut spec here");
  plan->add_option("--out", cfg.out_dir, "Directory for the JSON report");
  plan->add_flag("--no-timestamp", cfg.no_timestamp, "Leave timestamps out of the report");

  auto* compare = app.add_subcommand("compare", "Equal-allocation variance of gate cuts vs wire cuts");
  add_circuit_options(compare, cfg);
  compare->add_option("--shots", cfg.shots, "Shots per plan and seed (default 60000)");
  compare->add_option("--seed", cfg.seed, "First seed (default: QCUT_SEED, else 1)");
  compare->add_option("--seeds", cfg.seeds, "Number of consecutive seeds (default 10)");
  compare->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 256));
  compare->add_option("--time-cuts", cfg.time_cuts_path,
                      "Wire-cut spec for the time-like plan (default: one wire cut on each cut gate's second qubit, right "
                      "after the gate)");

  auto* generate = app.add_subcommand("generate", "Write a demo circuit as JSON");
  generate->add_option("kind", gen.kind, "cluster | qaoa | random")
      ->check(CLI::IsMember({"cluster", "qaoa", "random"}));
  generate->add_option("--k", gen.k, "cluster: qubits per cluster");
  generate->add_option("--n", gen.n, "qaoa/random: qubits");
  generate->add_option("--p", gen.p, "qaoa: layers");
  generate->add_option("--i", gen.i, "qaoa: long edge endpoint");
  generate->add_option("--j", gen.j, "qaoa: long edge endpoint");
  generate->add_option("--beta", gen.beta, "qaoa: mixer angle, all layers");
  generate->add_option("--gamma", gen.gamma, "qaoa: ZZ angle, all layers");
  generate->add_option("--ops", gen.ops, "random: op count");
  generate->add_option("--seed", gen.seed, "cluster/random: seed");
  generate->add_option("--out", gen.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  for (auto* sub : {run, compare}) {
    if (!sub->parsed()) continue;
    cfg.shots_given = sub->count("--shots") > 0;
    if (sub == run) cfg.epsilon_given = sub->count("--epsilon") > 0;
  }
  for (auto* sub : {verify, run, plan, compare}) {
    if (sub->parsed()) cfg.budget_given = sub->count("--budget") > 0;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg);
    if (run->parsed()) return cmd_run(cfg);
    if (plan->parsed()) return cmd_plan(cfg);
    if (compare->parsed()) return cmd_compare(cfg);
    return cmd_generate(gen);
  } catch (const qcut::ValidationError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const qcut::ConfigurationError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
}
