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
#include <cstdint>
#include <string>
#include <vector>

#include "cgap/error.hpp"
#include "cgap/model.hpp"
#include "cgap/sampler.hpp"

namespace cgap {

// Every potential pair with x = c/(n-1) (general) or x = c/n (bipartite),
// w = 1. Vertex loads equal c, so c > 1 leaves the matching polytope; callers
// see that through validate_polytope.
inline Instance gen_karp_sipser(std::uint32_t n, double c, GraphKind kind) {
  if (n < 2) throw Error(ErrorCode::kInvalidInstance, "karp_sipser needs n >= 2");
  if (!(c > 0.0)) throw Error(ErrorCode::kInvalidInstance, "karp_sipser needs c > 0");
  const double x = kind == GraphKind::kGeneral ? c / (n - 1) : c / n;
  if (x > 1.0) throw Error(ErrorCode::kInvalidInstance, "c too large: edge probability exceeds 1");
  std::vector<PotentialEdge> edges;
  if (kind == GraphKind::kGeneral) {
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b) edges.push_back({a, b, x, 1.0});
  } else {
    edges.reserve(static_cast<std::size_t>(n) * n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) edges.push_back({a, b, x, 1.0});
  }
  return Instance(kind, n, std::move(edges));
}

// Bipartite, u = L0 and v = R0. Edge 0 is e = (u, v) with x = eps and weight
// `weight_e`; edge 1 is e_u = (L0, R1) with x = 1 - eps; edges 2.. are
// (Li, R0) for i = 1..n-1, each with x = (1 - eps)/(n - 1).
inline Instance gen_pendant_star(std::uint32_t n, double eps, double weight_e = 1.0) {
  if (n < 2) throw Error(ErrorCode::kInvalidInstance, "pendant_star needs n >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::kInvalidInstance, "eps must lie in (0,1]");
  std::vector<PotentialEdge> edges;
  edges.push_back({0, 0, eps, weight_e});
  edges.push_back({0, 1, 1.0 - eps, 1.0});
  const double spread = (1.0 - eps) / (n - 1);
  for (std::uint32_t i = 1; i < n; ++i) edges.push_back({i, 0, spread, 1.0});
  return Instance(GraphKind::kBipartite, n, std::move(edges));
}

// Bipartite, e = (L0, R0) with x = eps (edge 0), then (L0, Rj) for j = 1..n-1
// and (Li, R0) for i = 1..n-1, all with x = (1 - eps)/(n - 1).
inline Instance gen_equal_split_star(std::uint32_t n, double eps) {
  if (n < 2) throw Error(ErrorCode::kInvalidInstance, "equal_split_star needs n >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::kInvalidInstance, "eps must lie in (0,1]");
  std::vector<PotentialEdge> edges;
  edges.push_back({0, 0, eps, 1.0});
  const double spread = (1.0 - eps) / (n - 1);
  for (std::uint32_t j = 1; j < n; ++j) edges.push_back({0, j, spread, 1.0});
  for (std::uint32_t i = 1; i < n; ++i) edges.push_back({i, 0, spread, 1.0});
  return Instance(GraphKind::kBipartite, n, std::move(edges));
}

struct RandomPointOptions {
  bool weighted = true;        // otherwise w = 1
  std::size_t max_edges = 0;   // keep only the first k selected pairs; 0 = no cap
};

// Random degree-feasible point: each pair kept with probability `density`,
// x uniform in (0,1], w uniform in [0,1]; then every x_e is divided by
// max(1, load(u), load(v)) until all loads are at most 1.
inline Instance gen_random_point(std::uint32_t n, double density, Seed seed, GraphKind kind,
                                 RandomPointOptions opt = {}) {
  if (!(density >= 0.0 && density <= 1.0))
    throw Error(ErrorCode::kInvalidInstance, "density must lie in [0,1]");
  enum : std::uint64_t { kSelect = 0, kProbability = 1, kWeight = 2 };
  std::vector<PotentialEdge> edges;
  std::uint64_t slot = 0;
  auto consider = [&](std::uint32_t a, std::uint32_t b) {
    const std::uint64_t s = slot++;
    if (opt.max_edges != 0 && edges.size() >= opt.max_edges) return;
    if (!(keyed_uniform(seed, kSelect, s) < density)) return;
    const double x = 1.0 - keyed_uniform(seed, kProbability, s);
    const double w = opt.weighted ? keyed_uniform(seed, kWeight, s) : 1.0;
    edges.push_back({a, b, x, w});
  };
  if (kind == GraphKind::kGeneral) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b) consider(a, b);
  } else {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) consider(a, b);
  }
  Instance raw(kind, n, edges);
  for (int round = 0; round < 64; ++round) {
    const auto load = vertex_loads(raw);
    if (load.empty() || *std::max_element(load.begin(), load.end()) <= 1.0) break;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = raw.endpoints(e);
      edges[e].x /= std::max({1.0, load[a], load[b]});
    }
    raw = Instance(kind, n, edges);
  }
  return raw;
}

}  // namespace cgap
