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
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgap/error.hpp"

namespace cgap {

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr std::size_t kDefaultOddSetCutoff = 14;

enum class GraphKind { kBipartite, kGeneral };

inline const char* to_string(GraphKind kind) {
  return kind == GraphKind::kBipartite ? "bipartite" : "general";
}

enum class Side : std::uint8_t { kNone, kLeft, kRight };

// A vertex as the user sees it. General instances use Side::kNone; bipartite
// instances tag every vertex with its side and index it within that side.
struct VertexId {
  std::uint32_t index = 0;
  Side side = Side::kNone;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline std::string to_string(VertexId v) {
  switch (v.side) {
    case Side::kLeft: return "L" + std::to_string(v.index);
    case Side::kRight: return "R" + std::to_string(v.index);
    case Side::kNone: break;
  }
  return std::to_string(v.index);
}

// For bipartite instances u indexes V1 and v indexes V2.
struct PotentialEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double x = 0.0;
  double w = 1.0;
};

// Immutable after construction. Vertices are addressed internally by a flat
// index: general vertex i -> i, bipartite left i -> i, right j -> n + j.
class Instance {
 public:
  Instance() = default;

  Instance(GraphKind kind, std::uint32_t n, std::vector<PotentialEdge> edges)
      : kind_(kind), n_(n), edges_(std::move(edges)) {
    validate();
    build_incidence();
  }

  GraphKind kind() const noexcept { return kind_; }
  bool bipartite() const noexcept { return kind_ == GraphKind::kBipartite; }
  std::uint32_t n() const noexcept { return n_; }
  std::size_t num_vertices() const noexcept {
    return bipartite() ? 2 * static_cast<std::size_t>(n_) : n_;
  }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const PotentialEdge> edges() const noexcept { return edges_; }
  const PotentialEdge& edge(std::size_t e) const { return edges_.at(e); }

  std::size_t flat_u(std::size_t e) const { return edges_[e].u; }
  std::size_t flat_v(std::size_t e) const {
    return bipartite() ? n_ + static_cast<std::size_t>(edges_[e].v)
                       : edges_[e].v;
  }
  std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const {
    return {flat_u(e), flat_v(e)};
  }

  std::size_t flat(VertexId v) const {
    return v.side == Side::kRight ? n_ + static_cast<std::size_t>(v.index)
                                  : v.index;
  }
  VertexId vertex(std::size_t flat_index) const {
    if (!bipartite()) return {static_cast<std::uint32_t>(flat_index), Side::kNone};
    if (flat_index < n_) return {static_cast<std::uint32_t>(flat_index), Side::kLeft};
    return {static_cast<std::uint32_t>(flat_index - n_), Side::kRight};
  }
  bool is_left(std::size_t flat_index) const {
    return bipartite() && flat_index < n_;
  }

  // Potential edges touching a vertex, in ascending edge order.
  std::span<const std::size_t> incident(std::size_t flat_index) const {
    return incidence_[flat_index];
  }

  bool unweighted() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const PotentialEdge& e) { return e.w == 1.0; });
  }

  std::vector<double> probabilities() const {
    std::vector<double> x(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) x[e] = edges_[e].x;
    return x;
  }

  // Same support and weights, probabilities multiplied by t in [0,1].
  Instance scaled(double t) const {
    std::vector<PotentialEdge> edges = edges_;
    for (auto& e : edges) e.x = std::clamp(e.x * t, 0.0, 1.0);
    return Instance(kind_, n_, std::move(edges));
  }

  Instance with_probabilities(std::span<const double> x) const {
    if (x.size() != edges_.size())
      throw Error(ErrorCode::kInvalidInstance, "probability vector length mismatch");
    std::vector<PotentialEdge> edges = edges_;
    for (std::size_t e = 0; e < edges.size(); ++e) edges[e].x = x[e];
    return Instance(kind_, n_, std::move(edges));
  }

  Instance with_unit_weights() const {
    std::vector<PotentialEdge> edges = edges_;
    for (auto& e : edges) e.w = 1.0;
    return Instance(kind_, n_, std::move(edges));
  }

 private:
  void validate() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
    keys.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      const std::string where = "edge " + std::to_string(i);
      if (e.u >= n_ || e.v >= n_)
        throw Error(ErrorCode::kInvalidInstance, where + ": endpoint out of range");
      if (!bipartite() && e.u == e.v)
        throw Error(ErrorCode::kInvalidInstance, where + ": self-loop");
      if (!(e.x >= 0.0 && e.x <= 1.0))
        throw Error(ErrorCode::kInvalidInstance, where + ": x outside [0,1]");
      if (!(e.w >= 0.0) || e.w == std::numeric_limits<double>::infinity())
        throw Error(ErrorCode::kInvalidInstance, where + ": negative or non-finite weight");
      keys.emplace_back(bipartite() ? e.u : std::min(e.u, e.v),
                        bipartite() ? e.v : std::max(e.u, e.v));
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw Error(ErrorCode::kInvalidInstance, "duplicate edge");
  }

  void build_incidence() {
    incidence_.assign(num_vertices(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incidence_[flat_u(e)].push_back(e);
      incidence_[flat_v(e)].push_back(e);
    }
  }

  GraphKind kind_ = GraphKind::kGeneral;
  std::uint32_t n_ = 0;
  std::vector<PotentialEdge> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
};

struct VertexViolation {
  VertexId vertex;
  double load = 0.0;
};

struct OddSetViolation {
  std::vector<VertexId> vertices;
  double load = 0.0;
  double bound = 0.0;
};

struct PolytopeReport {
  bool degree_ok = true;
  double max_load = 0.0;
  std::optional<VertexViolation> violating_vertex;
  bool odd_set_checked = false;
  bool odd_sets_ok = true;
  std::optional<OddSetViolation> violating_odd_set;

  bool feasible() const { return degree_ok && odd_sets_ok; }
};

inline std::vector<double> vertex_loads(const Instance& inst) {
  std::vector<double> load(inst.num_vertices(), 0.0);
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    auto [a, b] = inst.endpoints(e);
    load[a] += inst.edge(e).x;
    load[b] += inst.edge(e).x;
  }
  return load;
}

// Degree constraints always; odd-set constraints by exhaustive enumeration
// when requested. The reported odd set is the lexicographically smallest
// violating one (vertices compared in flat order).
inline PolytopeReport validate_polytope(const Instance& inst, bool check_odd_sets,
                                        std::size_t odd_set_cutoff = kDefaultOddSetCutoff) {
  PolytopeReport report;
  const auto load = vertex_loads(inst);
  for (std::size_t v = 0; v < load.size(); ++v) {
    report.max_load = std::max(report.max_load, load[v]);
    if (report.degree_ok && load[v] > 1.0 + kFeasibilityTolerance) {
      report.degree_ok = false;
      report.violating_vertex = VertexViolation{inst.vertex(v), load[v]};
    }
  }
  if (!check_odd_sets) return report;

  const std::size_t nv = inst.num_vertices();
  if (nv > odd_set_cutoff || nv >= 63)
    throw Error(ErrorCode::kOddSetCheckInfeasible,
                std::to_string(nv) + " vertices exceeds cutoff " +
                    std::to_string(odd_set_cutoff));
  report.odd_set_checked = true;

  std::optional<std::vector<std::size_t>> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nv); ++mask) {
    const int size = std::popcount(mask);
    if (size < 3 || size % 2 == 0) continue;
    double s = 0.0;
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      auto [a, b] = inst.endpoints(e);
      if ((mask >> a & 1) && (mask >> b & 1)) s += inst.edge(e).x;
    }
    const double bound = (size - 1) / 2;
    if (s <= bound + kFeasibilityTolerance) continue;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < nv; ++v)
      if (mask >> v & 1) members.push_back(v);
    if (!best || members < *best) {
      best = members;
      OddSetViolation viol;
      viol.load = s;
      viol.bound = bound;
      for (auto v : members) viol.vertices.push_back(inst.vertex(v));
      report.violating_odd_set = std::move(viol);
    }
  }
  report.odd_sets_ok = !best.has_value();
  return report;
}

// Sum of w_e x_e, or of x_e alone when `unweighted` is set.
inline double fractional_value(const Instance& inst, bool unweighted = false) {
  double total = 0.0;
  for (const auto& e : inst.edges()) total += (unweighted ? 1.0 : e.w) * e.x;
  return total;
}

}  // namespace cgap
