// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgap/constants.hpp"
#include "cgap/error.hpp"
#include "cgap/estimator.hpp"
#include "cgap/gallery.hpp"
#include "cgap/json_io.hpp"
#include "cgap/matching.hpp"
#include "cgap/sampler.hpp"

namespace cgap {

struct KernelConfig {
  std::size_t poisson_tail_cutoff = 60;
  std::size_t series_truncation = 15;
  double grid_step = 1e-3;
};

// Outcome of one numerical certification. `margin` is the smallest observed
// value minus the reference; the check passes when margin >= -tolerance.
struct CheckReport {
  std::string check;
  Json parameters = Json::object();
  double min_value = std::numeric_limits<double>::infinity();
  Json argmin = nullptr;
  double reference = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  bool passed = true;
  std::uint64_t points = 0;
  Json details = Json::object();
};

inline Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["parameters"] = r.parameters;
  j["min_value"] = r.min_value;
  j["argmin"] = r.argmin;
  j["reference"] = r.reference;
  j["margin"] = r.margin;
  j["passed"] = r.passed;
  j["points"] = r.points;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

// ---------------------------------------------------------------------------
// Distributions

inline void check_probabilities(std::span<const double> p) {
  for (double q : p)
    if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "Bernoulli parameter outside [0,1]");
}

// Law of a sum of independent Bernoulli(p_i), by iterative convolution.
inline std::vector<double> poisson_binomial_pmf(std::span<const double> p) {
  check_probabilities(p);
  std::vector<double> pmf{1.0};
  pmf.reserve(p.size() + 1);
  for (double q : p) {
    pmf.push_back(0.0);
    for (std::size_t k = pmf.size() - 1; k > 0; --k) pmf[k] = pmf[k] * (1.0 - q) + pmf[k - 1] * q;
    pmf[0] *= 1.0 - q;
  }
  return pmf;
}

inline std::vector<double> binomial_pmf(std::size_t m, double q) {
  const std::vector<double> p(m, q);
  return poisson_binomial_pmf(p);
}

// Poisson(lambda) probabilities for k = 0..cutoff.
inline std::vector<double> poisson_pmf(double lambda, std::size_t cutoff) {
  std::vector<double> pmf(cutoff + 1);
  double term = std::exp(-lambda);
  for (std::size_t k = 0; k <= cutoff; ++k) {
    pmf[k] = term;
    term *= lambda / static_cast<double>(k + 1);
  }
  return pmf;
}

// E[1/(1 + max(Y, Z))] from the two laws.
inline double inv_max_expectation_pmf(std::span<const double> py, std::span<const double> pz) {
  // Cumulative masses let the double sum collapse to one pass per side.
  double total = 0.0, cdf_z = 0.0;
  std::vector<double> cdf_y(py.size());
  double run = 0.0;
  for (std::size_t i = 0; i < py.size(); ++i) cdf_y[i] = run += py[i];
  const std::size_t top = std::max(py.size(), pz.size());
  for (std::size_t k = 0; k < top; ++k) {
    const double fy = k < py.size() ? py[k] : 0.0;
    const double fz = k < pz.size() ? pz[k] : 0.0;
    const double below_y = k == 0 ? 0.0 : (k - 1 < cdf_y.size() ? cdf_y[k - 1] : 1.0);
    // max(Y,Z) = k: Y = k and Z <= k, or Z = k and Y < k.
    const double mass = fy * (cdf_z + fz) + fz * below_y;
    total += mass / static_cast<double>(1 + k);
    cdf_z += fz;
  }
  return total;
}

inline double inv_max_expectation(std::span<const double> y, std::span<const double> z) {
  const auto py = poisson_binomial_pmf(y);
  const auto pz = poisson_binomial_pmf(z);
  return inv_max_expectation_pmf(py, pz);
}

// E[1/(1 + max(1, Y))].
inline double one_sided_expectation_pmf(std::span<const double> py) {
  double total = 0.0;
  for (std::size_t k = 0; k < py.size(); ++k) total += py[k] / static_cast<double>(1 + std::max<std::size_t>(1, k));
  return total;
}

// t_j = sum_{i<j} Pr[Y=i] (1/(1+i) - 1/(1+j)) for j = 1..j_max; element
// [j-1] holds t_j.
inline std::vector<double> tj_from_pmf(std::span<const double> py, std::size_t j_max) {
  std::vector<double> t(j_max, 0.0);
  for (std::size_t j = 1; j <= j_max; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < j && i < py.size(); ++i)
      s += py[i] * (1.0 / static_cast<double>(1 + i) - 1.0 / static_cast<double>(1 + j));
    t[j - 1] = s;
  }
  return t;
}

inline std::vector<double> tj_coefficients(std::span<const double> y, std::size_t j_max) {
  if (j_max < 1) throw Error(ErrorCode::kInvalidArgument, "j_max must be at least 1");
  const auto py = poisson_binomial_pmf(y);
  return tj_from_pmf(py, j_max);
}

// t_2/2 >= t_j/j for 3 <= j <= j_max. Stated for E[Y] = 1.
inline CheckReport check_lemma_gain(std::span<const double> y, std::size_t j_max,
                                    double tolerance = kFeasibilityTolerance) {
  CheckReport r;
  r.check = "lemma_gain";
  r.parameters = {{"m", y.size()}, {"j_max", j_max}};
  r.reference = 0.0;
  const auto t = tj_coefficients(y, std::max<std::size_t>(j_max, 2));
  for (std::size_t j = 3; j <= j_max; ++j) {
    const double gap = t[1] / 2.0 - t[j - 1] / static_cast<double>(j);
    ++r.points;
    if (gap < r.margin) {
      r.margin = r.min_value = gap;
      r.argmin = {{"j", j}};
    }
  }
  if (r.points == 0) r.margin = r.min_value = 0.0;
  r.passed = r.margin >= -tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Grids of Bernoulli vectors. Entries are multiples of `step`, which must
// divide 1. Since every quantity here is symmetric in the coordinates, only
// nonincreasing vectors are visited.

inline int grid_units(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "grid step must lie in (0,1]");
  const double k = std::round(1.0 / step);
  if (std::abs(k * step - 1.0) > 1e-9) throw Error(ErrorCode::kInvalidArgument, "grid step must divide 1");
  return static_cast<int>(k);
}

namespace detail {

inline void partitions_rec(std::vector<int>& parts, std::size_t pos, int remaining, int cap,
                           const std::function<void(const std::vector<int>&)>& fn) {
  if (pos + 1 == parts.size()) {
    if (remaining > cap) return;
    parts[pos] = remaining;
    fn(parts);
    return;
  }
  const int slots = static_cast<int>(parts.size() - pos);
  for (int v = std::min(cap, remaining); v >= 0 && v * slots >= remaining; --v) {
    parts[pos] = v;
    partitions_rec(parts, pos + 1, remaining - v, v, fn);
  }
}

}  // namespace detail

// Nonincreasing length-`m` vectors of nonnegative integers summing to `total`.
inline void for_each_sorted_vector(std::size_t m, int total,
                                   const std::function<void(const std::vector<int>&)>& fn) {
  if (m == 0) {
    if (total == 0) fn({});
    return;
  }
  std::vector<int> parts(m, 0);
  detail::partitions_rec(parts, 0, total, total, fn);
}

struct GridVector {
  std::vector<double> p;
  std::vector<double> pmf;
  int units = 0;
};

inline std::vector<GridVector> grid_vectors(std::size_t m, int units_per_one, int min_total, int max_total) {
  std::vector<GridVector> out;
  for (int s = min_total; s <= max_total; ++s) {
    for_each_sorted_vector(m, s, [&](const std::vector<int>& parts) {
      GridVector g;
      g.units = s;
      for (int k : parts) g.p.push_back(static_cast<double>(k) / units_per_one);
      g.pmf = poisson_binomial_pmf(g.p);
      out.push_back(std::move(g));
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weighted bipartite kernel

inline double one_sided_binomial(std::size_t m) {
  const auto pmf = binomial_pmf(m, 1.0 / static_cast<double>(m));
  return one_sided_expectation_pmf(pmf);
}

// For Y, Z sums of m Bernoullis with E[Y] = E[Z] = 1 on the grid, checks
// E[1/(1+max(Y,Z))] >= E[1/(1+max(1,Y_U))], Y_U ~ Binomial(m, 1/m). The
// reference uses max(1, Y_U): against E[1/(1+Y_U)] the inequality already
// fails at m = 1 (1/3 < 1/2); that comparison is recorded in `details`.
inline CheckReport verify_oneside(std::size_t m, double step, double tolerance = kFeasibilityTolerance) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  const int units = grid_units(step);
  CheckReport r;
  r.check = "theorem_oneside";
  r.parameters = {{"m", m}, {"step", step}};
  r.reference = one_sided_binomial(m);
  const auto vectors = grid_vectors(m, units, units, units);
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (std::size_t b = a; b < vectors.size(); ++b) {
      const double v = inv_max_expectation_pmf(vectors[a].pmf, vectors[b].pmf);
      ++r.points;
      if (v < r.min_value) {
        r.min_value = v;
        r.argmin = {{"y", vectors[a].p}, {"z", vectors[b].p}};
      }
    }
  }
  r.margin = r.min_value - r.reference;
  r.passed = r.margin >= -tolerance;
  const auto uniform = binomial_pmf(m, 1.0 / static_cast<double>(m));
  double literal = 0.0;
  for (std::size_t k = 0; k < uniform.size(); ++k) literal += uniform[k] / static_cast<double>(1 + k);
  r.details = {{"literal_reference", literal}, {"literal_holds", r.min_value >= literal - tolerance}};
  return r;
}

// Over grid vectors with sum 1, E[1/(1+max(Y,1))] is smallest at the uniform
// vector (1/m, ..., 1/m).
inline CheckReport verify_one_side_uniform(std::size_t m, double step, double tolerance = kFeasibilityTolerance) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  const int units = grid_units(step);
  CheckReport r;
  r.check = "lemma_one_side_uniform";
  r.parameters = {{"m", m}, {"step", step}};
  r.reference = one_sided_binomial(m);
  for (const auto& g : grid_vectors(m, units, units, units)) {
    const double v = one_sided_expectation_pmf(g.pmf);
    ++r.points;
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = {{"y", g.p}};
    }
  }
  r.margin = r.min_value - r.reference;
  r.passed = r.margin >= -tolerance;
  return r;
}

// Grid surrogate for the weighted bipartite floor at finite m: every pair of
// grid vectors with sums at most 1 keeps E[1/(1+max(Y,Z))] above
// 1 - 3/(2e) - slack.
inline CheckReport verify_weighted_floor_grid(std::size_t m, double step, double slack = 5e-3) {
  const int units = grid_units(step);
  CheckReport r;
  r.check = "weighted_floor_grid";
  r.parameters = {{"m", m}, {"step", step}, {"slack", slack}};
  r.reference = kWeightedBipartiteFloor - slack;
  const auto vectors = grid_vectors(m, units, 0, units);
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (std::size_t b = a; b < vectors.size(); ++b) {
      const double v = inv_max_expectation_pmf(vectors[a].pmf, vectors[b].pmf);
      ++r.points;
      if (v < r.min_value) {
        r.min_value = v;
        r.argmin = {{"y", vectors[a].p}, {"z", vectors[b].p}};
      }
    }
  }
  r.margin = r.min_value - r.reference;
  r.passed = r.margin >= 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Unweighted bipartite kernel

// F(x0, y, z) = x0 E[1/(1+max(Y,Z))] + sum_i c (x0 y_i^2 - x0^2 y_i)
//                                    + sum_i c (x0 z_i^2 - x0^2 z_i).
inline double transfer_objective(double x0, std::span<const double> y, std::span<const double> z, double c) {
  double quad = 0.0;
  for (double a : y) quad += c * (x0 * a * a - x0 * x0 * a);
  for (double a : z) quad += c * (x0 * a * a - x0 * x0 * a);
  return x0 * inv_max_expectation(y, z) + quad;
}

// Within every (sum y, sum z) bucket of the grid, F is no smaller than at the
// equal split (y_s/m, ..., y_s/m, z_s/m, ..., z_s/m).
inline CheckReport verify_equal_split(double x0, std::size_t m, double step, double c = 1.0 / 6.0,
                                      double tolerance = kFeasibilityTolerance) {
  if (!(x0 > 0.0 && x0 <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "x0 must lie in (0,1]");
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  const int units = grid_units(step);
  const int cap = static_cast<int>(std::floor((1.0 - x0) * units + 1e-9));
  CheckReport r;
  r.check = "theorem_equal_split";
  r.parameters = {{"x0", x0}, {"m", m}, {"step", step}, {"c", c}};
  r.reference = 0.0;

  struct Prepared {
    GridVector g;
    double linear = 0.0;  // sum_i c (x0 p_i^2 - x0^2 p_i)
  };
  std::vector<Prepared> vectors;
  for (auto& g : grid_vectors(m, units, 0, cap)) {
    Prepared p;
    for (double a : g.p) p.linear += c * (x0 * a * a - x0 * x0 * a);
    p.g = std::move(g);
    vectors.push_back(std::move(p));
  }
  auto equal_split = [&](int sy, int sz) {
    const std::vector<double> y(m, static_cast<double>(sy) / units / static_cast<double>(m));
    const std::vector<double> z(m, static_cast<double>(sz) / units / static_cast<double>(m));
    return transfer_objective(x0, y, z, c);
  };
  std::map<std::pair<int, int>, double> equal;
  for (int sy = 0; sy <= cap; ++sy)
    for (int sz = 0; sz <= cap; ++sz) equal[{sy, sz}] = equal_split(sy, sz);

  for (const auto& a : vectors) {
    for (const auto& b : vectors) {
      const double f = x0 * inv_max_expectation_pmf(a.g.pmf, b.g.pmf) + a.linear + b.linear;
      const double gap = f - equal[{a.g.units, b.g.units}];
      ++r.points;
      if (gap < r.margin) {
        r.margin = gap;
        r.min_value = f;
        r.argmin = {{"y", a.g.p}, {"z", b.g.p}};
      }
    }
  }
  r.passed = r.margin >= -tolerance;
  return r;
}

// P_t(x) = e^{-2(1-x)} sum_{k<=t} (sum_{j<=k} 1/((1+max(j,k-j)) j! (k-j)!)) (1-x)^k,
// the expectation E[1/(1+max(Y,Z))] for Y, Z ~ Poisson(1-x) truncated at
// total count t.
inline double poisson_truncated_series(double x, std::size_t t) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "x must lie in [0,1]");
  const double lambda = 1.0 - x;
  std::vector<double> inv_fact(t + 1);
  inv_fact[0] = 1.0;
  for (std::size_t k = 1; k <= t; ++k) inv_fact[k] = inv_fact[k - 1] / static_cast<double>(k);
  double sum = 0.0, power = 1.0;
  for (std::size_t k = 0; k <= t; ++k) {
    double coeff = 0.0;
    for (std::size_t j = 0; j <= k; ++j)
      coeff += inv_fact[j] * inv_fact[k - j] / static_cast<double>(1 + std::max(j, k - j));
    sum += coeff * power;
    power *= lambda;
  }
  return std::exp(-2.0 * lambda) * sum;
}

inline double poisson_pair_expectation(double x, const KernelConfig& cfg = {}) {
  return poisson_truncated_series(x, cfg.poisson_tail_cutoff);
}

// H(x) = x P_t(x) - 2 c x^2; c = 1/6 gives x P_t(x) - x^2/3.
inline double unweighted_envelope(double x, const KernelConfig& cfg = {}, double c = 1.0 / 6.0) {
  return x * poisson_truncated_series(x, cfg.series_truncation) - 2.0 * c * x * x;
}

// H(x)/x, with its limit P_t(0) at x = 0.
inline double unweighted_envelope_ratio(double x, const KernelConfig& cfg = {}, double c = 1.0 / 6.0) {
  return poisson_truncated_series(x, cfg.series_truncation) - 2.0 * c * x;
}

// Minimum of H(x)/x over x in {0, step, ..., 1} against `threshold`.
inline CheckReport scan_unweighted_envelope(const KernelConfig& cfg = {}, double c = 1.0 / 6.0,
                                            double threshold = kUnweightedBipartiteFloor,
                                            double tolerance = kFeasibilityTolerance) {
  CheckReport r;
  r.check = "unweighted_envelope";
  r.parameters = {{"series_truncation", cfg.series_truncation}, {"grid_step", cfg.grid_step}, {"c", c}};
  r.reference = threshold;
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / cfg.grid_step));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x = std::min(1.0, static_cast<double>(i) * cfg.grid_step);
    const double v = unweighted_envelope_ratio(x, cfg, c);
    ++r.points;
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = {{"x", x}};
    }
  }
  r.margin = r.min_value - r.reference;
  r.passed = r.margin >= -tolerance;
  r.details = {{"value_at_zero", unweighted_envelope_ratio(0.0, cfg, c)}};
  return r;
}

struct WeightedKernelConstant {
  double closed_form = 0.0;     // 1 - 3/(2e)
  double series = 0.0;          // (S - 5/2)/e + 1/e with S = sum_{k<=cutoff} 1/k!
  double poisson_direct = 0.0;  // sum_k Pr[Poisson(1) = k] / (1 + max(1, k))
};

inline WeightedKernelConstant weighted_kernel_constant(std::size_t cutoff = 60) {
  WeightedKernelConstant k;
  k.closed_form = kWeightedBipartiteFloor;
  double s = 0.0, term = 1.0;
  for (std::size_t i = 0; i <= cutoff; ++i) {
    s += term;
    term /= static_cast<double>(i + 1);
  }
  k.series = (s - 2.5) / std::numbers::e + 1.0 / std::numbers::e;
  const auto pmf = poisson_pmf(1.0, cutoff);
  k.poisson_direct = one_sided_expectation_pmf(pmf);
  return k;
}

inline double general_bound_constant() {
  return (std::exp(2.0) - 1.0) / (2.0 * std::exp(2.0));
}

// ---------------------------------------------------------------------------
// General graphs

struct ContinuousLemmaReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = true;
};

// sum_e x_e (nu(G + e) - nu(G - e)) + 2 nu(G) >= sum_e x_e w_e.
inline ContinuousLemmaReport check_lemma_continuous(const SampledGraph& g, GeneralSearchLimits limits = {},
                                                    double tolerance = kFeasibilityTolerance) {
  const auto& inst = g.instance();
  ContinuousLemmaReport r;
  const double nu = max_weight_matching_general(g, limits);
  r.lhs = 2.0 * nu;
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    const double x = inst.edge(e).x;
    r.rhs += x * inst.edge(e).w;
    if (x == 0.0) continue;
    const double with = g.contains(e) ? nu : max_weight_matching_general(g.with_edge(e), limits);
    const double without = g.contains(e) ? max_weight_matching_general(g.without_edge(e), limits) : nu;
    r.lhs += x * (with - without);
  }
  r.margin = r.lhs - r.rhs;
  r.passed = r.margin >= -tolerance;
  return r;
}

// Random degree-feasible general instances (2..max_n vertices), each paired
// with an arbitrary subgraph of its potential edges.
inline CheckReport sweep_lemma_continuous(std::size_t pairs, Seed seed, std::uint32_t max_n = 6,
                                          double tolerance = kFeasibilityTolerance) {
  CheckReport r;
  r.check = "lemma_continuous";
  r.parameters = {{"pairs", pairs}, {"max_n", max_n}, {"seed", seed}};
  r.reference = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto n = static_cast<std::uint32_t>(2 + keyed_bits(seed, i, 0) % (max_n - 1));
    const double density = 0.3 + 0.7 * keyed_uniform(seed, i, 1);
    const Instance inst = gen_random_point(n, density, keyed_bits(seed, i, 2), GraphKind::kGeneral);
    SampledGraph g(inst);
    for (std::size_t e = 0; e < inst.num_edges(); ++e)
      if (keyed_uniform(seed, i, 16 + e) < 0.5) g = g.with_edge(e);
    const auto rep = check_lemma_continuous(g, {}, tolerance);
    ++r.points;
    if (rep.margin < r.margin) {
      r.margin = rep.margin;
      r.min_value = rep.lhs;
      r.argmin = {{"pair", i}, {"instance", to_json(inst)}, {"subgraph", g.realized()}, {"rhs", rep.rhs}};
    }
  }
  if (r.points == 0) r.margin = r.min_value = 0.0;
  r.passed = r.margin >= -tolerance;
  return r;
}

enum class PhiMode { kExact, kMonteCarlo };

struct PhiPoint {
  double t = 0.0;
  double phi = 0.0;
  double std_error = 0.0;
};

// phi(t) = E[nu_w(G)] with G drawn at probabilities t x, at t = i/k for
// i = 0..k. Monte Carlo mode reuses the keyed stream at every t, so the
// samples are coupled across the grid.
inline std::vector<PhiPoint> phi_curve(const Instance& inst, std::size_t grid_points, PhiMode mode,
                                       const EstimatorOptions& opt = {}) {
  if (grid_points == 0) throw Error(ErrorCode::kInvalidArgument, "grid_points must be positive");
  if (mode == PhiMode::kExact) check_enumerable(inst);
  std::vector<PhiPoint> curve;
  for (std::size_t i = 0; i <= grid_points; ++i) {
    PhiPoint p;
    p.t = static_cast<double>(i) / static_cast<double>(grid_points);
    const Instance scaled = inst.scaled(p.t);
    if (mode == PhiMode::kExact) {
      p.phi = expected_matching_value(scaled, opt.limits);
    } else {
      const auto stats = summarize(sampled_matching_values(scaled, opt.samples, opt));
      p.phi = stats.mean;
      p.std_error = stats.std_error;
    }
    curve.push_back(p);
  }
  return curve;
}

// Integrated form of d/dt(e^{2t} phi) >= e^{2t} sum w x between consecutive
// grid points: e^{2b} phi(b) - e^{2a} phi(a) >= (e^{2b} - e^{2a})/2 sum w x.
// Also checks phi(0) = 0 and the endpoint e^2 phi(1) >= (e^2 - 1)/2 sum w x.
inline CheckReport audit_phi_curve(const std::vector<PhiPoint>& curve, double fractional,
                                   double tolerance = kFeasibilityTolerance) {
  CheckReport r;
  r.check = "phi_differential_inequality";
  r.parameters = {{"grid_points", curve.empty() ? 0 : curve.size() - 1}, {"fractional", fractional}};
  r.reference = 0.0;
  if (curve.empty()) throw Error(ErrorCode::kInvalidArgument, "empty curve");
  double worst = std::abs(curve.front().phi) <= tolerance ? 0.0 : -std::abs(curve.front().phi);
  r.argmin = {{"t", curve.front().t}};
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double a = curve[i].t, b = curve[i + 1].t;
    const double lhs = std::exp(2 * b) * curve[i + 1].phi - std::exp(2 * a) * curve[i].phi;
    const double rhs = 0.5 * (std::exp(2 * b) - std::exp(2 * a)) * fractional;
    ++r.points;
    if (lhs - rhs < worst) {
      worst = lhs - rhs;
      r.argmin = {{"t", a}};
    }
  }
  const double end = std::exp(2.0) * curve.back().phi - 0.5 * (std::exp(2.0) - 1.0) * fractional;
  if (end < worst) {
    worst = end;
    r.argmin = {{"t", curve.back().t}, {"endpoint", true}};
  }
  r.margin = r.min_value = worst;
  r.passed = worst >= -tolerance;
  r.details = {{"phi_at_one", curve.back().phi},
               {"ratio_at_one", fractional > 0.0 ? curve.back().phi / fractional : 0.0},
               {"general_floor", general_bound_constant()}};
  return r;
}

}  // namespace cgap
