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
#include <string>
#include <vector>

#include "cgap/constants.hpp"
#include "cgap/gallery.hpp"
#include "cgap/json_io.hpp"
#include "cgap/kernels.hpp"

namespace cgap {

struct VerifyConfig {
  KernelConfig kernel{};
  double bernoulli_step = 0.05;
  double c = 1.0 / 6.0;
  std::size_t oneside_max_m = 4;
  std::size_t equal_split_max_m = 2;
  std::size_t random_vectors = 10000;
  std::size_t random_max_m = 8;
  std::size_t continuous_pairs = 500;
  std::size_t phi_instances = 20;
  std::size_t phi_grid_points = 100;
  Seed seed = 1;
  double tolerance = kFeasibilityTolerance;
};

struct SuiteReport {
  std::vector<CheckReport> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed; });
  }
  const CheckReport* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.check == name) return &c;
    return nullptr;
  }
};

inline Json to_json(const SuiteReport& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return {{"passed", s.passed()}, {"checks", checks}};
}

namespace detail {

// Folds `part` into `total`, keeping the worst margin and where it occurred.
inline void absorb(CheckReport& total, const CheckReport& part, double tolerance) {
  total.points += part.points;
  if (part.margin < total.margin) {
    total.margin = part.margin;
    total.min_value = part.min_value;
    total.reference = part.reference;
    total.argmin = {{"at", part.argmin}, {"parameters", part.parameters}};
  }
  total.passed = total.margin >= -tolerance;
}

// Random Bernoulli vector of length m normalized to mean 1.
inline std::vector<double> random_mean_one(Seed seed, std::uint64_t index, std::size_t m) {
  std::vector<double> p(m);
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) s += p[k] = keyed_uniform(seed, index, k) + 1e-12;
  for (auto& q : p) q = std::min(1.0, q / s);
  return p;
}

inline CheckReport lemma_gain_checks(const VerifyConfig& cfg) {
  CheckReport total;
  total.check = "lemma_gain";
  total.parameters = {{"grid_max_m", cfg.oneside_max_m}, {"step", cfg.bernoulli_step},
                      {"random_vectors", cfg.random_vectors}, {"random_max_m", cfg.random_max_m},
                      {"j_max", 8}};
  const int units = grid_units(cfg.bernoulli_step);
  for (std::size_t m = 1; m <= cfg.oneside_max_m; ++m)
    for (const auto& g : grid_vectors(m, units, units, units))
      absorb(total, check_lemma_gain(g.p, 8, cfg.tolerance), cfg.tolerance);
  for (std::size_t i = 0; i < cfg.random_vectors; ++i) {
    const std::size_t m = 1 + keyed_bits(cfg.seed, i, 1000) % cfg.random_max_m;
    const auto p = random_mean_one(cfg.seed, i, m);
    auto part = check_lemma_gain(p, std::max<std::size_t>(m, 8), cfg.tolerance);
    part.parameters["p"] = p;
    absorb(total, part, cfg.tolerance);
  }
  return total;
}

inline CheckReport oneside_checks(const VerifyConfig& cfg) {
  CheckReport total;
  total.check = "theorem_oneside";
  total.parameters = {{"grid_max_m", cfg.oneside_max_m}, {"step", cfg.bernoulli_step},
                      {"random_pairs", cfg.random_vectors}, {"random_max_m", cfg.random_max_m}};
  bool literal = true;
  for (std::size_t m = 1; m <= cfg.oneside_max_m; ++m) {
    const auto part = verify_oneside(m, cfg.bernoulli_step, cfg.tolerance);
    literal = literal && part.details.value("literal_holds", true);
    absorb(total, part, cfg.tolerance);
  }
  for (std::size_t i = 0; i < cfg.random_vectors; ++i) {
    const std::size_t m = 1 + keyed_bits(cfg.seed, i, 2000) % cfg.random_max_m;
    const auto y = random_mean_one(cfg.seed ^ 0x5bd1e995ULL, 2 * i, m);
    const auto z = random_mean_one(cfg.seed ^ 0x5bd1e995ULL, 2 * i + 1, m);
    CheckReport part;
    part.check = "theorem_oneside_random";
    part.parameters = {{"m", m}};
    part.reference = one_sided_binomial(m);
    part.min_value = inv_max_expectation(y, z);
    part.margin = part.min_value - part.reference;
    part.argmin = {{"y", y}, {"z", z}};
    part.points = 1;
    absorb(total, part, cfg.tolerance);
  }
  total.details = {{"reference_form", "E[1/(1+max(1,Y_U))]"},
                   {"literal_form_holds_on_grid", literal}};
  return total;
}

inline CheckReport one_side_uniform_checks(const VerifyConfig& cfg) {
  CheckReport total;
  total.check = "lemma_one_side_uniform";
  total.parameters = {{"max_m", cfg.oneside_max_m}, {"step", cfg.bernoulli_step}};
  for (std::size_t m = 1; m <= cfg.oneside_max_m; ++m)
    absorb(total, verify_one_side_uniform(m, cfg.bernoulli_step, cfg.tolerance), cfg.tolerance);
  return total;
}

inline CheckReport weighted_floor_checks(const VerifyConfig& cfg) {
  CheckReport total;
  total.check = "weighted_floor_grid";
  total.parameters = {{"max_m", cfg.oneside_max_m}, {"step", cfg.bernoulli_step}, {"slack", 5e-3}};
  for (std::size_t m = 1; m <= cfg.oneside_max_m; ++m)
    absorb(total, verify_weighted_floor_grid(m, cfg.bernoulli_step), 0.0);
  return total;
}

inline CheckReport equal_split_checks(const VerifyConfig& cfg) {
  CheckReport total;
  total.check = "theorem_equal_split";
  total.parameters = {{"max_m", cfg.equal_split_max_m}, {"step", cfg.bernoulli_step}, {"c", cfg.c},
                      {"x0", "0.1..1.0"}};
  for (int i = 1; i <= 10; ++i)
    for (std::size_t m = 1; m <= cfg.equal_split_max_m; ++m)
      absorb(total, verify_equal_split(i / 10.0, m, cfg.bernoulli_step, cfg.c, cfg.tolerance), cfg.tolerance);
  return total;
}

inline CheckReport weighted_constant_check(const VerifyConfig& cfg) {
  const auto k = weighted_kernel_constant(cfg.kernel.poisson_tail_cutoff);
  const double finite50 = one_sided_binomial(50);
  CheckReport r;
  r.check = "weighted_kernel_constant";
  r.parameters = {{"poisson_tail_cutoff", cfg.kernel.poisson_tail_cutoff}};
  r.reference = 0.4481;
  r.min_value = k.closed_form;
  r.margin = k.closed_form - 0.4481;
  r.points = 3;
  const double series_gap = std::abs(k.closed_form - k.series);
  const double direct_gap = std::abs(k.closed_form - k.poisson_direct);
  r.passed = r.margin >= 0.0 && series_gap <= 1e-12 && direct_gap <= 1e-12 &&
             std::abs(finite50 - k.closed_form) <= 5e-3;
  r.details = {{"closed_form", k.closed_form}, {"series", k.series}, {"poisson_direct", k.poisson_direct},
               {"series_gap", series_gap}, {"binomial_m50", finite50}};
  return r;
}

inline CheckReport general_constant_checks(const VerifyConfig& cfg) {
  CheckReport r;
  r.check = "general_bound";
  r.parameters = {{"instances", cfg.phi_instances}, {"grid_points", cfg.phi_grid_points}, {"seed", cfg.seed}};
  const double constant = general_bound_constant();
  r.reference = constant;
  r.details = {{"constant", constant}, {"constant_at_least_0.4323", constant >= 0.4323}};
  double worst_audit = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.phi_instances; ++i) {
    const auto n = static_cast<std::uint32_t>(3 + keyed_bits(cfg.seed, i, 3000) % 3);
    const Instance inst = gen_random_point(n, 0.8, keyed_bits(cfg.seed, i, 3001), GraphKind::kGeneral);
    if (inst.num_edges() == 0) continue;
    const auto curve = phi_curve(inst, cfg.phi_grid_points, PhiMode::kExact);
    const double fractional = fractional_value(inst);
    const auto audit = audit_phi_curve(curve, fractional, cfg.tolerance);
    worst_audit = std::min(worst_audit, audit.margin);
    const double ratio = curve.back().phi / fractional;
    ++r.points;
    if (ratio < r.min_value) {
      r.min_value = ratio;
      r.argmin = {{"instance", to_json(inst)}};
    }
  }
  r.margin = r.min_value - constant;
  r.details["worst_phi_audit_margin"] = worst_audit;
  r.passed = constant >= 0.4323 && r.margin >= -cfg.tolerance && worst_audit >= -cfg.tolerance;
  return r;
}

inline CheckReport poisson_truncation_check(const VerifyConfig& cfg) {
  CheckReport r;
  r.check = "poisson_truncation";
  r.parameters = {{"series_truncation", cfg.kernel.series_truncation},
                  {"poisson_tail_cutoff", cfg.kernel.poisson_tail_cutoff}, {"x_step", 0.01}};
  r.reference = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    const double lo = poisson_truncated_series(x, cfg.kernel.series_truncation);
    const double hi = poisson_truncated_series(x, cfg.kernel.series_truncation + 1);
    const double full = poisson_truncated_series(x, cfg.kernel.poisson_tail_cutoff);
    const double gap = std::min(hi - lo, full - hi);
    ++r.points;
    if (gap < r.margin) {
      r.margin = r.min_value = gap;
      r.argmin = {{"x", x}};
    }
  }
  r.passed = r.margin >= -cfg.tolerance;
  return r;
}

}  // namespace detail

// Runs every analytic check at the configured resolution. Checks are
// reported in name order.
inline SuiteReport run_verify_suite(const VerifyConfig& cfg = {}) {
  SuiteReport s;
  s.checks.push_back(detail::lemma_gain_checks(cfg));
  s.checks.push_back(detail::oneside_checks(cfg));
  s.checks.push_back(detail::one_side_uniform_checks(cfg));
  s.checks.push_back(detail::weighted_floor_checks(cfg));
  s.checks.push_back(detail::equal_split_checks(cfg));
  s.checks.push_back(scan_unweighted_envelope(cfg.kernel, cfg.c, kUnweightedBipartiteFloor, cfg.tolerance));
  s.checks.push_back(detail::weighted_constant_check(cfg));
  s.checks.push_back(sweep_lemma_continuous(cfg.continuous_pairs, cfg.seed, 6, cfg.tolerance));
  s.checks.push_back(detail::general_constant_checks(cfg));
  s.checks.push_back(detail::poisson_truncation_check(cfg));
  std::sort(s.checks.begin(), s.checks.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.check < b.check; });
  return s;
}

}  // namespace cgap
