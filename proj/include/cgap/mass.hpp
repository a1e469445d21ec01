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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cgap/matching.hpp"
#include "cgap/model.hpp"
#include "cgap/sampler.hpp"

namespace cgap {

struct SchemeConfig {
  double c = 1.0 / 6.0;  // edge-to-edge transfer constant
};

// Mass held by every vertex and every potential edge after distribution.
struct MassVector {
  std::vector<double> vertex;  // by flat vertex index
  std::vector<double> edge;    // by potential edge index

  double vertex_total() const { return std::accumulate(vertex.begin(), vertex.end(), 0.0); }
  double edge_total() const { return std::accumulate(edge.begin(), edge.end(), 0.0); }
  double total() const { return vertex_total() + edge_total(); }
};

// Each non-isolated vertex splits its cover value evenly over its realized
// incident edges; isolated vertices keep theirs.
inline MassVector weighted_scheme(const SampledGraph& g, const FractionalVertexCover& y) {
  const auto& inst = g.instance();
  MassVector t;
  t.vertex = y.y;
  t.edge.assign(inst.num_edges(), 0.0);
  const auto deg = g.degrees();
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    if (!g.contains(e)) continue;
    auto [a, b] = inst.endpoints(e);
    t.edge[e] = y[a] / static_cast<double>(deg[a]) + y[b] / static_cast<double>(deg[b]);
  }
  for (std::size_t v = 0; v < inst.num_vertices(); ++v)
    if (deg[v] > 0) t.vertex[v] = 0.0;
  return t;
}

// Net deterministic income of every potential edge from the quadratic
// transfers: each edge a pays c x_a^2 x_b to every distinct potential edge b
// sharing an endpoint. Independent of the sample.
inline std::vector<double> transfer_income(const Instance& inst, std::span<const double> x,
                                           SchemeConfig cfg = {}) {
  std::vector<double> income(inst.num_edges(), 0.0);
  for (std::size_t v = 0; v < inst.num_vertices(); ++v) {
    const auto inc = inst.incident(v);
    for (auto a : inc) {
      for (auto b : inc) {
        if (a == b) continue;
        const double pay = cfg.c * x[a] * x[a] * x[b];
        income[a] -= pay;
        income[b] += pay;
      }
    }
  }
  return income;
}

inline MassVector unweighted_scheme(const SampledGraph& g, const FractionalVertexCover& y,
                                    std::span<const double> x, SchemeConfig cfg = {}) {
  MassVector t = weighted_scheme(g, y);
  const auto income = transfer_income(g.instance(), x, cfg);
  for (std::size_t e = 0; e < t.edge.size(); ++e) t.edge[e] += income[e];
  return t;
}

inline MassVector unweighted_scheme(const SampledGraph& g, const FractionalVertexCover& y,
                                    SchemeConfig cfg = {}) {
  const auto x = g.instance().probabilities();
  return unweighted_scheme(g, y, x, cfg);
}

struct MassViolation {
  std::string check;     // "vertex_nonnegative", "conservation", "edge_total"
  std::string location;  // vertex index or "total"
  double value = 0.0;
  double limit = 0.0;
};

struct AuditReport {
  double min_vertex_mass = 0.0;
  double total_mass = 0.0;
  double cover_total = 0.0;
  double edge_total = 0.0;
  double nu = 0.0;
  std::vector<MassViolation> violations;

  bool passed() const { return violations.empty(); }
};

// (i) t_v >= -tol for every vertex, (ii) sum t = ||y||_1 = nu, and
// (iii) sum over edges of t_e <= nu.
inline AuditReport audit_masses(const MassVector& t, const FractionalVertexCover& y, double nu,
                                double tolerance = kFeasibilityTolerance) {
  AuditReport r;
  r.total_mass = t.total();
  r.cover_total = y.total();
  r.edge_total = t.edge_total();
  r.nu = nu;
  r.min_vertex_mass = t.vertex.empty() ? 0.0 : t.vertex.front();
  for (std::size_t v = 0; v < t.vertex.size(); ++v) {
    r.min_vertex_mass = std::min(r.min_vertex_mass, t.vertex[v]);
    if (t.vertex[v] < -tolerance)
      r.violations.push_back({"vertex_nonnegative", std::to_string(v), t.vertex[v], 0.0});
  }
  if (std::abs(r.total_mass - r.cover_total) > tolerance)
    r.violations.push_back({"conservation", "total", r.total_mass, r.cover_total});
  if (std::abs(r.cover_total - nu) > tolerance)
    r.violations.push_back({"conservation", "cover_vs_nu", r.cover_total, nu});
  if (r.edge_total > nu + tolerance)
    r.violations.push_back({"edge_total", "total", r.edge_total, nu});
  return r;
}

}  // namespace cgap
