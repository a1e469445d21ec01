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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cgap/error.hpp"
#include "cgap/mass.hpp"
#include "cgap/matching.hpp"
#include "cgap/model.hpp"
#include "cgap/parallel.hpp"
#include "cgap/sampler.hpp"

namespace cgap {

enum class Method { kExact, kMonteCarlo };
enum class Scheme { kWeighted, kUnweighted };

inline const char* to_string(Method m) { return m == Method::kExact ? "exact" : "monte_carlo"; }
inline const char* to_string(Scheme s) { return s == Scheme::kWeighted ? "weighted" : "unweighted"; }

// Normal quantile for a two-sided 95% interval.
inline constexpr double kZ95 = 1.959963984540054;

struct RatioEstimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  Method method = Method::kExact;
  std::uint64_t samples = 0;
  Seed seed = 0;
  double expected_nu = 0.0;
  double fractional = 0.0;
};

struct EstimatorOptions {
  std::uint64_t samples = 100000;
  Seed seed = 0;
  std::size_t workers = 0;  // 0 = hardware concurrency
  GeneralSearchLimits limits{};
};

inline double checked_denominator(const Instance& inst) {
  const double denom = fractional_value(inst);
  if (!(denom > 0.0))
    throw Error(ErrorCode::kZeroDenominator, "sum of w_e x_e is zero");
  return denom;
}

// E[nu_w(G)] summed over the full support.
inline double expected_matching_value(const Instance& inst, GeneralSearchLimits limits = {}) {
  double total = 0.0;
  for_each_outcome(inst, [&](const SampledGraph& g, double p) { total += p * matching_value(g, limits); });
  return total;
}

inline RatioEstimate exact_ratio(const Instance& inst, GeneralSearchLimits limits = {}) {
  check_enumerable(inst);
  RatioEstimate r;
  r.fractional = checked_denominator(inst);
  r.expected_nu = expected_matching_value(inst, limits);
  r.value = r.ci_low = r.ci_high = r.expected_nu / r.fractional;
  r.method = Method::kExact;
  return r;
}

struct SampleSummary {
  double mean = 0.0;
  double std_error = 0.0;
};

inline SampleSummary summarize(const std::vector<double>& values) {
  SampleSummary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = pairwise_sum(values) / n;
  if (values.size() < 2) return s;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - s.mean) * (values[i] - s.mean);
  s.std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  return s;
}

// Per-sample matching values for samples [0, count) of the keyed stream.
inline std::vector<double> sampled_matching_values(const Instance& inst, std::uint64_t count,
                                                   const EstimatorOptions& opt) {
  std::vector<double> values(count);
  parallel_for(count, opt.workers == 0 ? default_workers() : opt.workers,
               [&](std::size_t i) { values[i] = matching_value(sample(inst, opt.seed, i), opt.limits); });
  return values;
}

inline RatioEstimate mc_ratio(const Instance& inst, const EstimatorOptions& opt) {
  if (opt.samples == 0) throw Error(ErrorCode::kInvalidInstance, "samples must be positive");
  RatioEstimate r;
  r.fractional = checked_denominator(inst);
  const auto stats = summarize(sampled_matching_values(inst, opt.samples, opt));
  r.expected_nu = stats.mean;
  r.value = stats.mean / r.fractional;
  r.ci_low = std::max(0.0, (stats.mean - kZ95 * stats.std_error) / r.fractional);
  r.ci_high = (stats.mean + kZ95 * stats.std_error) / r.fractional;
  r.method = Method::kMonteCarlo;
  r.samples = opt.samples;
  r.seed = opt.seed;
  return r;
}

inline RatioEstimate mc_ratio(const Instance& inst, std::uint64_t samples, Seed seed) {
  EstimatorOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  return mc_ratio(inst, opt);
}

struct EdgeCertificate {
  std::size_t edge = 0;
  double value = 0.0;      // E_G[t_e(G)] / (w_e x_e)
  double std_error = 0.0;  // zero in exact mode
  Method method = Method::kExact;
  Scheme scheme = Scheme::kWeighted;
  std::uint64_t samples = 0;
};

struct CertificateOptions {
  Scheme scheme = Scheme::kWeighted;
  SchemeConfig scheme_config{};
  EstimatorOptions estimator{};
};

namespace detail {

inline void check_certificate_input(const Instance& inst, Scheme scheme) {
  if (!inst.bipartite())
    throw Error(ErrorCode::kNotBipartite, "per-edge certificates need a bipartite instance");
  if (scheme == Scheme::kUnweighted && !inst.unweighted())
    throw Error(ErrorCode::kInvalidInstance, "unweighted scheme needs w = 1 on every edge");
}

inline void check_certified_edge(const Instance& inst, std::size_t e) {
  if (e >= inst.num_edges()) throw Error(ErrorCode::kInvalidInstance, "edge index out of range");
  if (!(inst.edge(e).x > 0.0) || !(inst.edge(e).w > 0.0))
    throw Error(ErrorCode::kUndefinedRatio,
                "edge " + std::to_string(e) + " has w_e x_e = 0");
}

// Vertex-to-edge share of edge e in sample g: y_u/deg(u) + y_v/deg(v) when e
// is realized, zero otherwise.
inline double vertex_share(const SampledGraph& g, const FractionalVertexCover& y, std::size_t e) {
  if (!g.contains(e)) return 0.0;
  auto [a, b] = g.instance().endpoints(e);
  return y[a] / static_cast<double>(g.degree(a)) + y[b] / static_cast<double>(g.degree(b));
}

}  // namespace detail

// Exact certificates for every edge in one pass over the support. Edges with
// w_e x_e = 0 get NaN.
inline std::vector<EdgeCertificate> exact_edge_certificates(const Instance& inst,
                                                            const CertificateOptions& opt = {}) {
  detail::check_certificate_input(inst, opt.scheme);
  check_enumerable(inst);
  std::vector<double> expected(inst.num_edges(), 0.0);
  for_each_outcome(inst, [&](const SampledGraph& g, double p) {
    const auto sol = max_weight_matching_bipartite(g);
    const auto t = weighted_scheme(g, sol.cover);
    for (std::size_t e = 0; e < inst.num_edges(); ++e) expected[e] += p * t.edge[e];
  });
  if (opt.scheme == Scheme::kUnweighted) {
    const auto x = inst.probabilities();
    const auto income = transfer_income(inst, x, opt.scheme_config);
    for (std::size_t e = 0; e < inst.num_edges(); ++e) expected[e] += income[e];
  }
  std::vector<EdgeCertificate> out(inst.num_edges());
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    const double denom = inst.edge(e).w * inst.edge(e).x;
    out[e].edge = e;
    out[e].value = denom > 0.0 ? expected[e] / denom : std::nan("");
    out[e].method = Method::kExact;
    out[e].scheme = opt.scheme;
  }
  return out;
}

// Monte Carlo certificate of one edge. Since t_e(G) is the vertex share
// (zero unless e is realized) plus a sample-independent transfer,
// E[t_e] = x_e E[share | e in G] + transfer; the conditional expectation is
// estimated from samples of the other edges with e forced present.
inline EdgeCertificate mc_edge_certificate(const Instance& inst, std::size_t e,
                                           const CertificateOptions& opt = {}) {
  detail::check_certificate_input(inst, opt.scheme);
  detail::check_certified_edge(inst, e);
  const auto& est = opt.estimator;
  if (est.samples == 0) throw Error(ErrorCode::kInvalidInstance, "samples must be positive");
  std::vector<double> share(est.samples);
  parallel_for(est.samples, est.workers == 0 ? default_workers() : est.workers, [&](std::size_t i) {
    const SampledGraph g = sample(inst, est.seed, i).with_edge(e);
    const auto sol = max_weight_matching_bipartite(g);
    share[i] = detail::vertex_share(g, sol.cover, e);
  });
  const auto stats = summarize(share);
  double transfer = 0.0;
  if (opt.scheme == Scheme::kUnweighted) {
    const auto x = inst.probabilities();
    transfer = transfer_income(inst, x, opt.scheme_config)[e];
  }
  const double w = inst.edge(e).w, x = inst.edge(e).x;
  EdgeCertificate c;
  c.edge = e;
  c.value = stats.mean / w + transfer / (w * x);
  c.std_error = stats.std_error / w;
  c.method = Method::kMonteCarlo;
  c.scheme = opt.scheme;
  c.samples = est.samples;
  return c;
}

inline EdgeCertificate per_edge_certificate(const Instance& inst, std::size_t e, Method mode,
                                            const CertificateOptions& opt = {}) {
  if (mode == Method::kMonteCarlo) return mc_edge_certificate(inst, e, opt);
  detail::check_certificate_input(inst, opt.scheme);
  detail::check_certified_edge(inst, e);
  return exact_edge_certificates(inst, opt)[e];
}

}  // namespace cgap
