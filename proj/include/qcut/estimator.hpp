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

// Sampling estimators over a cut circuit: the uniform random-term Monte
// Carlo estimator with its Hoeffding budget, and the equal-allocation
// estimator that runs the same number of shots for every term selection.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qcut/errors.hpp"
#include "qcut/fragment.hpp"
#include "qcut/program.hpp"
#include "qcut/rng.hpp"

namespace qcut {

// ---------------------------------------------------------------------------
// Budgets

struct SampleBudget {
  int ms = 0;
  int mt = 0;
  double epsilon = 0;
  double delta = 0;
  double magnitude = 1;  // per-shot bound B on |X|
  std::uint64_t n = 0;
};

namespace detail {

inline void check_accuracy(double epsilon, double delta) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be positive");
  if (!(delta > 0) || !(delta < 0.5)) throw ValidationError("delta must lie in (0, 1/2)");
}

inline std::uint64_t hoeffding_shots(long double magnitude, double epsilon, double delta) {
  const long double n = 2.0L * magnitude * magnitude / (static_cast<long double>(epsilon) * epsilon) *
                        std::log(1.0L / (2.0L * static_cast<long double>(delta)));
  if (!(n < 9.0e18L)) throw ConfigurationError("sample budget exceeds 9e18 shots");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n)));
}

}  // namespace detail

/// N = ceil(2 * 9^Ms * 16^Mt / eps^2 * ln(1/(2 delta))).
inline SampleBudget sample_budget(int ms, int mt, double epsilon, double delta) {
  if (ms < 0 || mt < 0) throw ValidationError("cut counts must be non-negative");
  detail::check_accuracy(epsilon, delta);
  SampleBudget b{ms, mt, epsilon, delta, 0, 0};
  const long double mag = std::pow(3.0L, ms) * std::pow(4.0L, mt);
  b.magnitude = static_cast<double>(mag);
  b.n = detail::hoeffding_shots(mag, epsilon, delta);
  return b;
}

/// Same bound with an explicit per-shot magnitude B: ceil(2 B^2 / eps^2 ln(1/(2 delta))).
inline SampleBudget magnitude_budget(double magnitude, double epsilon, double delta, int ms = 0, int mt = 0) {
  if (!(magnitude >= 1) || !std::isfinite(magnitude)) throw ValidationError("magnitude bound must be >= 1");
  detail::check_accuracy(epsilon, delta);
  SampleBudget b{ms, mt, epsilon, delta, magnitude, 0};
  b.n = detail::hoeffding_shots(magnitude, epsilon, delta);
  return b;
}

// ---------------------------------------------------------------------------
// Statistics

/// Unbiased sample variance, computed in two passes.
inline double empirical_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw ValidationError("sample variance needs at least 2 samples");
  long double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<long double>(xs.size());
  long double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return static_cast<double>(ss / static_cast<long double>(xs.size() - 1));
}

struct WeightedSample {
  std::vector<int> selection;
  double value = 0;
};

inline double empirical_variance(const std::vector<WeightedSample>& samples) {
  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) xs.push_back(s.value);
  return empirical_variance(xs);
}

struct TermStats {
  std::uint64_t index = 0;
  std::vector<int> selection;
  double coefficient = 0;
  std::uint64_t count = 0;
  double mean = 0;
  double variance = 0;  // sample variance of the per-shot values (0 when count < 2)
};

struct Estimate {
  std::string method;
  double mean = 0;
  double std_error = 0;
  double variance = 0;  // estimated variance of `mean`
  std::uint64_t shots = 0;
  std::vector<TermStats> per_term;
};

/// Fixed-width per-shot record (see report.hpp for the file layout).
struct ShotRecord {
  std::uint64_t term = 0;
  std::uint32_t sign_count = 0;
  std::uint32_t sign_bits = 0;  // bit k set: k-th sign was -1
  std::uint64_t y = 0;
  double value = 0;
};

struct SampleOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  bool importance = false;  // draw terms with probability |c| / gamma
  bool record_shots = false;
};

namespace detail {

/// Runs body(i) for i in [0, n) on up to `threads` workers over contiguous
/// chunks; rethrows the first failure.
template <typename Body>
void parallel_for(std::uint64_t n, int threads, Body body) {
  const std::uint64_t workers = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), 1,
                                                          std::max<std::uint64_t>(n, 1));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = n * w / workers; i < n * (w + 1) / workers; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline void check_shot_width(const CutCircuit& cc) {
  for (std::size_t f = 0; f < cc.fragment_count(); ++f) {
    const int w = cc.fragments().fragments[f].width;
    if (w > kShotQubitLimit) {
      std::ostringstream msg;
      msg << "fragment " << f << " is " << w << " qubits wide; the per-shot simulator holds " << kShotQubitLimit;
      throw ConfigurationError(msg.str());
    }
  }
}

/// Programs per fragment and local selection, built up front when small.
class ProgramCache {
 public:
  static constexpr std::uint64_t kMaxCached = 4096;

  explicit ProgramCache(const CutCircuit& cc) : cc_(cc), programs_(cc.fragment_count()) {
    for (std::size_t f = 0; f < cc.fragment_count(); ++f) {
      const std::uint64_t t = cc.local_combinations(f);
      if (t > kMaxCached) continue;
      std::vector<int> sel(static_cast<std::size_t>(cc.cut_count()), 0);
      for (std::uint64_t key = 0; key < t; ++key) {
        cc.apply_local_key(f, key, sel);
        programs_[f].push_back(cc.instantiate(f, sel));
      }
    }
  }

  /// Either a cached program or `scratch` filled on the fly.
  const FragmentProgram& get(std::size_t f, const std::vector<int>& sel, FragmentProgram& scratch) const {
    if (!programs_[f].empty()) return programs_[f][cc_.local_key(f, sel)];
    scratch = cc_.instantiate(f, sel);
    return scratch;
  }

 private:
  const CutCircuit& cc_;
  std::vector<std::vector<FragmentProgram>> programs_;
};

/// Mask over global y bits of the fragment's output qubits that carry a
/// non-identity Pauli.
inline std::uint64_t parity_mask(const CutCircuit& cc, std::size_t f) {
  const auto& obs = cc.circuit().observable;
  const int n = cc.circuit().n_qubits;
  std::uint64_t mask = 0;
  for (int q : cc.fragments().fragments[f].output_qubits) {
    if (obs.kind == OutputFunction::Kind::table || obs.paulis[static_cast<std::size_t>(q)] != PauliAxis::I) {
      mask |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  return mask;
}

inline void fill_stats(const std::vector<double>& xs, TermStats& t) {
  t.count = xs.size();
  if (xs.empty()) return;
  long double m = 0;
  for (double x : xs) m += x;
  t.mean = static_cast<double>(m / static_cast<long double>(xs.size()));
  t.variance = xs.size() >= 2 ? empirical_variance(xs) : 0.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Monte Carlo over uniformly drawn term selections

struct MonteCarloResult {
  Estimate estimate;
  double magnitude_bound = 0;
  std::vector<double> values;
  std::vector<ShotRecord> records;  // filled when options.record_shots
};

/// Each shot draws one term per cut (uniformly by default), runs every
/// fragment with the induced local channels and forms
/// X = prod_k (T_k c_k) * prod(signs) * weight * f(y).
inline MonteCarloResult run_monte_carlo(const CutCircuit& cc, std::uint64_t shots, const SampleOptions& opt) {
  if (shots < 2) throw ValidationError("a sampling run needs at least 2 shots");
  detail::check_shot_width(cc);
  const detail::ProgramCache cache(cc);
  const auto& decs = cc.decompositions();
  const std::size_t ncuts = decs.size();
  const int n = cc.circuit().n_qubits;
  const OutputFunction& obs = cc.circuit().observable;
  const double bound = cc.magnitude_bound(opt.importance);

  // Cumulative |c| tables for importance sampling.
  std::vector<std::vector<double>> cumulative(ncuts);
  for (std::size_t k = 0; k < ncuts; ++k) {
    double acc = 0;
    for (const auto& t : decs[k].terms) cumulative[k].push_back(acc += std::abs(t.coefficient));
  }

  MonteCarloResult res;
  res.magnitude_bound = bound;
  res.values.assign(shots, 0.0);
  std::vector<std::uint64_t> term_of(shots, 0);
  if (opt.record_shots) res.records.assign(shots, ShotRecord{});

  detail::parallel_for(shots, opt.threads, [&](std::uint64_t i) {
    KeyedStream rng(opt.seed, 0, i);
    std::vector<int> sel(ncuts, 0);
    double x = 1;
    for (std::size_t k = 0; k < ncuts; ++k) {
      const auto& d = decs[k];
      if (opt.importance) {
        const double u = rng.uniform() * cumulative[k].back();
        const auto it = std::upper_bound(cumulative[k].begin(), cumulative[k].end(), u);
        sel[k] = static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative[k].begin(),
                                                           static_cast<std::ptrdiff_t>(d.size()) - 1));
        x *= d.gamma * (d.terms[static_cast<std::size_t>(sel[k])].coefficient < 0 ? -1.0 : 1.0);
      } else {
        sel[k] = static_cast<int>(rng.below(d.size()));
        x *= static_cast<double>(d.size()) * d.terms[static_cast<std::size_t>(sel[k])].coefficient;
      }
    }
    std::uint64_t y = 0;
    std::uint32_t sign_bits = 0, sign_count = 0;
    FragmentProgram scratch;
    for (std::size_t f = 0; f < cc.fragment_count(); ++f) {
      const ShotOutcome out = run_shot(cache.get(f, sel, scratch), rng);
      x *= out.sign_product() * out.weight;
      y |= out.y;
      for (int b : out.cut_signs) {
        if (b < 0 && sign_count < 32) sign_bits |= std::uint32_t{1} << sign_count;
        ++sign_count;
      }
    }
    x *= obs.value(y, n);
    if (!(std::abs(x) <= bound * (1 + 1e-9))) {
      std::ostringstream msg;
      msg << "shot " << i << " produced |X| = " << std::abs(x) << " above the magnitude bound " << bound;
      throw InternalError(msg.str());
    }
    res.values[i] = x;
    term_of[i] = cc.encode(sel);
    if (opt.record_shots) res.records[i] = {term_of[i], sign_count, sign_bits, y, x};
  });

  Estimate& est = res.estimate;
  est.method = opt.importance ? "montecarlo-importance" : "montecarlo";
  est.shots = shots;
  long double sum = 0;
  for (double v : res.values) sum += v;
  est.mean = static_cast<double>(sum / static_cast<long double>(shots));
  const double var = empirical_variance(res.values);
  est.variance = var / static_cast<double>(shots);
  est.std_error = std::sqrt(est.variance);

  const std::uint64_t combos = cc.combinations();
  if (combos <= 4096) {
    std::vector<std::vector<double>> by_term(combos);
    for (std::uint64_t i = 0; i < shots; ++i) by_term[term_of[i]].push_back(res.values[i]);
    for (std::uint64_t t = 0; t < combos; ++t) {
      TermStats ts;
      ts.index = t;
      ts.selection = cc.decode(t);
      ts.coefficient = cc.coefficient(ts.selection);
      detail::fill_stats(by_term[t], ts);
      est.per_term.push_back(std::move(ts));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Equal allocation

enum class AllocationEstimator {
  factorized,  // product of independent per-fragment means (Pauli-string observables)
  joint,       // mean of the joint per-shot value
};

struct AllocationResult {
  Estimate estimate;
  AllocationEstimator estimator = AllocationEstimator::joint;
  std::uint64_t requested_shots = 0;
  std::uint64_t shots_per_term = 0;
  bool rounded = false;  // requested_shots was not a multiple of the term count
  std::vector<ShotRecord> records;
};

/// Runs K = ceil(N / T) shots for each of the T term selections and
/// combines the per-term means with the selection coefficients:
/// mean = sum_t C_t m_t, variance = sum_t C_t^2 Var(m_t).
///
/// For Pauli-string observables the fragments of a term are estimated
/// independently and m_t is the product of the per-fragment means of
/// (signs * weight * f_F(y_F)); Var(m_t) = prod(m_F^2 + s_F^2/K) - prod m_F^2.
/// Otherwise m_t is the mean of the joint per-shot value with Var = s^2/K.
inline AllocationResult run_equal_allocation(const CutCircuit& cc, std::uint64_t total_shots,
                                             const SampleOptions& opt) {
  if (total_shots < 1) throw ValidationError("a sampling run needs at least 1 shot");
  detail::check_shot_width(cc);
  const std::uint64_t combos = cc.combinations();
  if (combos > (std::uint64_t{1} << 20)) throw ConfigurationError("too many term selections for equal allocation");
  const detail::ProgramCache cache(cc);
  const std::size_t nf = cc.fragment_count();
  const int n = cc.circuit().n_qubits;
  const OutputFunction& obs = cc.circuit().observable;

  AllocationResult res;
  res.requested_shots = total_shots;
  res.shots_per_term = std::max<std::uint64_t>(2, (total_shots + combos - 1) / combos);
  res.rounded = res.shots_per_term * combos != total_shots;
  res.estimator = obs.kind == OutputFunction::Kind::pauli ? AllocationEstimator::factorized : AllocationEstimator::joint;
  const std::uint64_t k_shots = res.shots_per_term;
  const std::uint64_t total = k_shots * combos;

  std::vector<std::uint64_t> masks(nf);
  for (std::size_t f = 0; f < nf; ++f) masks[f] = detail::parity_mask(cc, f);

  std::vector<double> joint(total, 0.0);
  std::vector<double> parts(total * nf, 0.0);
  if (opt.record_shots) res.records.assign(total, ShotRecord{});
  detail::parallel_for(total, opt.threads, [&](std::uint64_t i) {
    const std::uint64_t t = i / k_shots, r = i % k_shots;
    KeyedStream rng(opt.seed, t + 1, r);
    const std::vector<int> sel = cc.decode(t);
    std::uint64_t y = 0;
    std::uint32_t sign_bits = 0, sign_count = 0;
    double weight = 1;
    FragmentProgram scratch;
    for (std::size_t f = 0; f < nf; ++f) {
      const ShotOutcome out = run_shot(cache.get(f, sel, scratch), rng);
      const double w = out.sign_product() * out.weight;
      weight *= w;
      y |= out.y;
      parts[i * nf + f] = w * (std::popcount(out.y & masks[f]) & 1 ? -1.0 : 1.0);
      for (int b : out.cut_signs) {
        if (b < 0 && sign_count < 32) sign_bits |= std::uint32_t{1} << sign_count;
        ++sign_count;
      }
    }
    joint[i] = weight * obs.value(y, n);
    if (opt.record_shots) res.records[i] = {t, sign_count, sign_bits, y, joint[i]};
  });

  Estimate& est = res.estimate;
  est.method = "allocation";
  est.shots = total;
  long double mean = 0, var = 0;
  const double kd = static_cast<double>(k_shots);
  for (std::uint64_t t = 0; t < combos; ++t) {
    TermStats ts;
    ts.index = t;
    ts.selection = cc.decode(t);
    ts.coefficient = cc.coefficient(ts.selection);
    detail::fill_stats(std::vector<double>(joint.begin() + static_cast<std::ptrdiff_t>(t * k_shots),
                                           joint.begin() + static_cast<std::ptrdiff_t>((t + 1) * k_shots)),
                       ts);
    double m_t = ts.mean, v_t = ts.variance / kd;
    if (res.estimator == AllocationEstimator::factorized) {
      double prod_m2 = 1, prod_second = 1;
      m_t = 1;
      for (std::size_t f = 0; f < nf; ++f) {
        std::vector<double> xs(k_shots);
        for (std::uint64_t r = 0; r < k_shots; ++r) xs[r] = parts[(t * k_shots + r) * nf + f];
        TermStats part;
        detail::fill_stats(xs, part);
        m_t *= part.mean;
        prod_m2 *= part.mean * part.mean;
        prod_second *= part.mean * part.mean + part.variance / kd;
      }
      v_t = std::max(0.0, prod_second - prod_m2);
    }
    mean += static_cast<long double>(ts.coefficient) * m_t;
    var += static_cast<long double>(ts.coefficient) * ts.coefficient * v_t;
    est.per_term.push_back(std::move(ts));
  }
  est.mean = static_cast<double>(mean);
  est.variance = static_cast<double>(var);
  est.std_error = std::sqrt(est.variance);
  return res;
}

// ---------------------------------------------------------------------------
// Local (per-fragment) equal allocation

/// One fragment run under one assignment of its own cuts' terms.
struct UnitStats {
  std::size_t fragment = 0;
  std::uint64_t key = 0;        // CutCircuit::local_key
  std::vector<int> selection;   // -1 for cuts without an endpoint in the fragment
  std::uint64_t count = 0;
  double mean = 0;
  double variance = 0;
};

struct LocalAllocationResult {
  Estimate estimate;
  std::uint64_t requested_shots = 0;
  std::uint64_t shots_per_unit = 0;
  bool rounded = false;
  std::vector<UnitStats> units;
  std::vector<ShotRecord> records;  // `term` holds the unit index
};

/// Splits N evenly over the units (fragment, local term assignment) and
/// estimates each unit's mean of signs * weight * f_F(y_F) once. A term's
/// value is the product of its fragments' unit means, so every unit
/// estimate is shared by all terms that agree on the fragment's cuts.
/// Variance is the first-order (delta method) propagation
/// sum_u g_u^2 s_u^2 / K with g_u = d mean / d m_u. Pauli-string
/// observables only.
inline LocalAllocationResult run_local_allocation(const CutCircuit& cc, std::uint64_t total_shots,
                                                  const SampleOptions& opt) {
  if (total_shots < 1) throw ValidationError("a sampling run needs at least 1 shot");
  if (cc.circuit().observable.kind != OutputFunction::Kind::pauli) {
    throw ValidationError("local allocation needs a Pauli-string observable");
  }
  detail::check_shot_width(cc);
  const std::uint64_t combos = cc.combinations();
  if (combos > (std::uint64_t{1} << 20)) throw ConfigurationError("too many term selections for local allocation");
  const std::size_t nf = cc.fragment_count();
  const std::size_t ncuts = static_cast<std::size_t>(cc.cut_count());

  std::vector<std::uint64_t> offset(nf + 1, 0);
  for (std::size_t f = 0; f < nf; ++f) offset[f + 1] = offset[f] + cc.local_combinations(f);
  const std::uint64_t units = offset[nf];
  if (units > (std::uint64_t{1} << 20)) throw ConfigurationError("too many fragment units for local allocation");

  LocalAllocationResult res;
  res.requested_shots = total_shots;
  res.shots_per_unit = std::max<std::uint64_t>(2, (total_shots + units - 1) / units);
  res.rounded = res.shots_per_unit * units != total_shots;
  const std::uint64_t k_shots = res.shots_per_unit;
  const std::uint64_t total = k_shots * units;

  const detail::ProgramCache cache(cc);
  std::vector<std::uint64_t> masks(nf);
  for (std::size_t f = 0; f < nf; ++f) masks[f] = detail::parity_mask(cc, f);
  auto fragment_of = [&](std::uint64_t u) {
    return static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), u) - offset.begin() - 1);
  };

  std::vector<double> values(total, 0.0);
  if (opt.record_shots) res.records.assign(total, ShotRecord{});
  detail::parallel_for(total, opt.threads, [&](std::uint64_t i) {
    const std::uint64_t u = i / k_shots, r = i % k_shots;
    const std::size_t f = fragment_of(u);
    KeyedStream rng(opt.seed, u + 1, r);
    std::vector<int> sel(ncuts, 0);
    cc.apply_local_key(f, u - offset[f], sel);
    FragmentProgram scratch;
    const ShotOutcome out = run_shot(cache.get(f, sel, scratch), rng);
    values[i] = out.sign_product() * out.weight * (std::popcount(out.y & masks[f]) & 1 ? -1.0 : 1.0);
    if (opt.record_shots) {
      std::uint32_t sign_bits = 0, sign_count = 0;
      for (int b : out.cut_signs) {
        if (b < 0 && sign_count < 32) sign_bits |= std::uint32_t{1} << sign_count;
        ++sign_count;
      }
      res.records[i] = {u, sign_count, sign_bits, out.y, values[i]};
    }
  });

  std::vector<double> m(units), s2(units);
  for (std::uint64_t u = 0; u < units; ++u) {
    const std::size_t f = fragment_of(u);
    TermStats ts;
    detail::fill_stats(std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(u * k_shots),
                                           values.begin() + static_cast<std::ptrdiff_t>((u + 1) * k_shots)),
                       ts);
    m[u] = ts.mean;
    s2[u] = ts.variance;
    UnitStats us{f, u - offset[f], std::vector<int>(ncuts, -1), ts.count, ts.mean, ts.variance};
    cc.apply_local_key(f, us.key, us.selection);
    res.units.push_back(std::move(us));
  }

  // mean = sum_t C_t prod_f m_{u_f(t)}; gradient via prefix/suffix products
  std::vector<long double> grad(units, 0.0L);
  std::vector<std::uint64_t> u_of(nf);
  std::vector<long double> prefix(nf + 1), suffix(nf + 1);
  long double mean = 0;
  for (std::uint64_t t = 0; t < combos; ++t) {
    const std::vector<int> sel = cc.decode(t);
    const long double c = cc.coefficient(sel);
    for (std::size_t f = 0; f < nf; ++f) u_of[f] = offset[f] + cc.local_key(f, sel);
    prefix[0] = 1;
    for (std::size_t f = 0; f < nf; ++f) prefix[f + 1] = prefix[f] * m[u_of[f]];
    suffix[nf] = 1;
    for (std::size_t f = nf; f-- > 0;) suffix[f] = suffix[f + 1] * m[u_of[f]];
    mean += c * prefix[nf];
    for (std::size_t f = 0; f < nf; ++f) grad[u_of[f]] += c * prefix[f] * suffix[f + 1];
  }
  long double var = 0;
  const long double kd = static_cast<long double>(k_shots);
  for (std::uint64_t u = 0; u < units; ++u) var += grad[u] * grad[u] * s2[u] / kd;

  Estimate& est = res.estimate;
  est.method = "local-allocation";
  est.shots = total;
  est.mean = static_cast<double>(mean);
  est.variance = static_cast<double>(var);
  est.std_error = std::sqrt(est.variance);
  return res;
}

}  // namespace qcut
