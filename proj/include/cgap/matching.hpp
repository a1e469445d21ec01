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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "cgap/error.hpp"
#include "cgap/model.hpp"
#include "cgap/sampler.hpp"

namespace cgap {

struct Matching {
  std::vector<std::size_t> edges;  // indices into the instance's edge list
  double weight = 0.0;
};

// Vertex values indexed by flat vertex index.
struct FractionalVertexCover {
  std::vector<double> y;

  double operator[](std::size_t v) const { return y[v]; }
  double total() const { return std::accumulate(y.begin(), y.end(), 0.0); }
};

struct BipartiteSolution {
  Matching matching;
  double value = 0.0;
  FractionalVertexCover cover;
};

struct GeneralSearchLimits {
  std::size_t max_vertices = 20;
  std::size_t max_edges = 24;
};

namespace detail {

// Realized edges that carry positive weight; zero-weight edges never change
// a matching value and impose only trivial cover constraints.
inline std::vector<std::size_t> weighted_edges(const SampledGraph& g) {
  std::vector<std::size_t> out;
  const auto& inst = g.instance();
  for (std::size_t e = 0; e < inst.num_edges(); ++e)
    if (g.contains(e) && inst.edge(e).w > 0.0) out.push_back(e);
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Groups edges by connected component, components in order of their
// smallest vertex.
inline std::vector<std::vector<std::size_t>> components(const Instance& inst,
                                                        const std::vector<std::size_t>& edges) {
  DisjointSets sets(inst.num_vertices());
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    sets.unite(a, b);
  }
  std::vector<std::vector<std::size_t>> by_root(inst.num_vertices());
  for (auto e : edges) by_root[sets.find(inst.flat_u(e))].push_back(e);
  std::vector<std::vector<std::size_t>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

// Minimum-cost perfect assignment on a square matrix (rows x cols, row-major),
// potentials form. Returns row assigned to each column.
inline std::vector<std::size_t> min_cost_assignment(const std::vector<double>& cost, std::size_t n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_of_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_of_col[j - 1] = p[j] - 1;
  return row_of_col;
}

struct ComponentLayout {
  std::vector<std::size_t> left, right;  // flat vertex ids
  std::vector<std::size_t> local;        // flat id -> position in its side
};

inline ComponentLayout layout(const Instance& inst, const std::vector<std::size_t>& edges,
                              std::vector<std::size_t>& scratch_local) {
  ComponentLayout lay;
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    if (scratch_local[a] == kUnset) {
      scratch_local[a] = lay.left.size();
      lay.left.push_back(a);
    }
    if (scratch_local[b] == kUnset) {
      scratch_local[b] = lay.right.size();
      lay.right.push_back(b);
    }
  }
  return lay;
}

// Max-weight matching inside one bipartite component via assignment on the
// zero-padded square matrix; pairs without a positive edge are dropped.
inline std::vector<std::size_t> component_matching(const Instance& inst,
                                                   const std::vector<std::size_t>& edges,
                                                   const ComponentLayout& lay,
                                                   const std::vector<std::size_t>& local) {
  const std::size_t n = std::max(lay.left.size(), lay.right.size());
  std::vector<double> cost(n * n, 0.0);
  std::vector<std::size_t> edge_at(n * n, std::numeric_limits<std::size_t>::max());
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    const std::size_t cell = local[a] * n + local[b];
    cost[cell] = -inst.edge(e).w;
    edge_at[cell] = e;
  }
  const auto row_of_col = min_cost_assignment(cost, n);
  std::vector<std::size_t> matched;
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t e = edge_at[row_of_col[col] * n + col];
    if (e != std::numeric_limits<std::size_t>::max()) matched.push_back(e);
  }
  return matched;
}

// Among all optimal covers of the component, the one that is pointwise
// smallest on the left side (and therefore largest on the right). Optimal
// covers are exactly the nonnegative feasible y that are tight on a fixed
// maximum matching and vanish on its exposed vertices; with s = -y_right the
// conditions are difference constraints, whose pointwise-minimal solution is
// minus the shortest distance to the anchor node.
inline void left_minimal_cover(const Instance& inst, const std::vector<std::size_t>& edges,
                               const std::vector<std::size_t>& matched,
                               const ComponentLayout& lay, const std::vector<std::size_t>& local,
                               std::vector<double>& y) {
  struct Arc {
    std::size_t from, to;
    double bound;  // x_to - x_from <= bound
  };
  const std::size_t nl = lay.left.size();
  const std::size_t nodes = 1 + nl + lay.right.size();
  auto left_node = [&](std::size_t flat) { return 1 + local[flat]; };
  auto right_node = [&](std::size_t flat) { return 1 + nl + local[flat]; };

  std::vector<char> left_matched(nl, 0), right_matched(lay.right.size(), 0);
  std::vector<Arc> arcs;
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    arcs.push_back({left_node(a), right_node(b), -inst.edge(e).w});
  }
  for (auto e : matched) {
    auto [a, b] = inst.endpoints(e);
    arcs.push_back({right_node(b), left_node(a), inst.edge(e).w});
    left_matched[local[a]] = 1;
    right_matched[local[b]] = 1;
  }
  for (std::size_t i = 0; i < nl; ++i) {
    arcs.push_back({1 + i, 0, 0.0});
    if (!left_matched[i]) arcs.push_back({0, 1 + i, 0.0});
  }
  for (std::size_t j = 0; j < lay.right.size(); ++j) {
    arcs.push_back({0, 1 + nl + j, 0.0});
    if (!right_matched[j]) arcs.push_back({1 + nl + j, 0, 0.0});
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> to_anchor(nodes, kInf);
  to_anchor[0] = 0.0;
  for (std::size_t round = 0; round < nodes; ++round) {
    bool changed = false;
    for (const auto& arc : arcs) {
      if (to_anchor[arc.to] == kInf) continue;
      const double cand = arc.bound + to_anchor[arc.to];
      if (cand < to_anchor[arc.from] - 1e-15) {
        to_anchor[arc.from] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (std::size_t i = 0; i < nl; ++i) y[lay.left[i]] = std::max(0.0, -to_anchor[1 + i]);
  for (std::size_t j = 0; j < lay.right.size(); ++j)
    y[lay.right[j]] = std::max(0.0, to_anchor[1 + nl + j]);
}

inline void require_bipartite(const SampledGraph& g) {
  if (!g.instance().bipartite())
    throw Error(ErrorCode::kNotBipartite, "instance kind is general");
}

}  // namespace detail

// Maximum-weight matching of a bipartite sample together with an optimal
// fractional vertex cover: nonnegative, feasible on every realized edge,
// zero on isolated and exposed vertices, and ||y||_1 equal to the matching
// weight. Among optimal covers the left-minimal one is returned.
inline BipartiteSolution max_weight_matching_bipartite(const SampledGraph& g) {
  detail::require_bipartite(g);
  const auto& inst = g.instance();
  BipartiteSolution sol;
  sol.cover.y.assign(inst.num_vertices(), 0.0);
  std::vector<std::size_t> local(inst.num_vertices(), std::numeric_limits<std::size_t>::max());
  for (const auto& comp : detail::components(inst, detail::weighted_edges(g))) {
    const auto lay = detail::layout(inst, comp, local);
    const auto matched = detail::component_matching(inst, comp, lay, local);
    detail::left_minimal_cover(inst, comp, matched, lay, local, sol.cover.y);
    for (auto e : matched) {
      sol.matching.edges.push_back(e);
      sol.matching.weight += inst.edge(e).w;
    }
  }
  std::sort(sol.matching.edges.begin(), sol.matching.edges.end());
  sol.value = sol.matching.weight;
  return sol;
}

// Value-only variant without the cover computation.
inline double max_weight_bipartite_value(const SampledGraph& g) {
  detail::require_bipartite(g);
  const auto& inst = g.instance();
  std::vector<std::size_t> local(inst.num_vertices(), std::numeric_limits<std::size_t>::max());
  double value = 0.0;
  for (const auto& comp : detail::components(inst, detail::weighted_edges(g))) {
    const auto lay = detail::layout(inst, comp, local);
    for (auto e : detail::component_matching(inst, comp, lay, local)) value += inst.edge(e).w;
  }
  return value;
}

namespace detail {

inline double search_by_vertex_mask(const Instance& inst, const std::vector<std::size_t>& edges,
                                    bool unit_weights) {
  std::vector<std::size_t> id(inst.num_vertices(), std::numeric_limits<std::size_t>::max());
  std::size_t k = 0;
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    if (id[a] == std::numeric_limits<std::size_t>::max()) id[a] = k++;
    if (id[b] == std::numeric_limits<std::size_t>::max()) id[b] = k++;
  }
  struct Nbr {
    std::size_t other;
    double w;
  };
  std::vector<std::vector<Nbr>> adj(k);
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    const double w = unit_weights ? 1.0 : inst.edge(e).w;
    adj[id[a]].push_back({id[b], w});
    adj[id[b]].push_back({id[a], w});
  }
  // best[S] = heaviest matching using only vertices in S; the lowest vertex
  // of S is either left unmatched or matched to a neighbour inside S.
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::vector<double> best(std::size_t{full} + 1, 0.0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    double value = best[rest];
    for (const auto& nb : adj[low])
      if (rest >> nb.other & 1)
        value = std::max(value, nb.w + best[rest & ~(std::uint32_t{1} << nb.other)]);
    best[s] = value;
  }
  return best[full];
}

inline void search_by_edges(const Instance& inst, const std::vector<std::size_t>& edges,
                            bool unit_weights, std::size_t pos, double current,
                            std::vector<char>& used, double& best) {
  if (pos == edges.size()) {
    best = std::max(best, current);
    return;
  }
  const std::size_t e = edges[pos];
  auto [a, b] = inst.endpoints(e);
  if (!used[a] && !used[b]) {
    used[a] = used[b] = 1;
    search_by_edges(inst, edges, unit_weights, pos + 1,
                    current + (unit_weights ? 1.0 : inst.edge(e).w), used, best);
    used[a] = used[b] = 0;
  }
  search_by_edges(inst, edges, unit_weights, pos + 1, current, used, best);
}

inline double general_search(const SampledGraph& g, bool unit_weights, GeneralSearchLimits limits) {
  const auto& inst = g.instance();
  std::vector<std::size_t> edges;
  for (std::size_t e = 0; e < inst.num_edges(); ++e)
    if (g.contains(e) && (unit_weights || inst.edge(e).w > 0.0)) edges.push_back(e);
  if (edges.empty()) return 0.0;

  std::vector<char> touched(inst.num_vertices(), 0);
  std::size_t k = 0;
  for (auto e : edges) {
    auto [a, b] = inst.endpoints(e);
    k += !touched[a] + !touched[b];
    touched[a] = touched[b] = 1;
  }
  if (k <= limits.max_vertices && k < 31) return search_by_vertex_mask(inst, edges, unit_weights);
  if (edges.size() <= limits.max_edges) {
    std::vector<char> used(inst.num_vertices(), 0);
    double best = 0.0;
    search_by_edges(inst, edges, unit_weights, 0, 0.0, used, best);
    return best;
  }
  throw Error(ErrorCode::kSolverCutoffExceeded,
              std::to_string(k) + " vertices and " + std::to_string(edges.size()) +
                  " realized edges exceed limits " + std::to_string(limits.max_vertices) +
                  "/" + std::to_string(limits.max_edges));
}

// Augmenting-path search from a free left vertex.
inline bool augment(std::size_t a, const std::vector<std::vector<std::size_t>>& adj,
                    std::vector<std::size_t>& mate_of_right, std::vector<std::uint32_t>& seen,
                    std::uint32_t stamp) {
  for (auto b : adj[a]) {
    if (seen[b] == stamp) continue;
    seen[b] = stamp;
    if (mate_of_right[b] == std::numeric_limits<std::size_t>::max() ||
        augment(mate_of_right[b], adj, mate_of_right, seen, stamp)) {
      mate_of_right[b] = a;
      return true;
    }
  }
  return false;
}

// Edmonds' blossom algorithm for maximum cardinality matching on a general
// graph given as adjacency lists.
class Blossom {
 public:
  explicit Blossom(const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), n_(adj.size()), match_(n_, kNone), parent_(n_), base_(n_), used_(n_), in_blossom_(n_) {}

  std::size_t solve() {
    std::size_t size = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (match_[v] != kNone) continue;
      for (auto to : adj_[v]) {
        if (match_[to] == kNone) {
          match_[to] = v;
          match_[v] = to;
          ++size;
          break;
        }
      }
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (match_[v] != kNone || adj_[v].empty()) continue;
      std::size_t end = find_path(v);
      if (end == kNone) continue;
      ++size;
      while (end != kNone) {
        const std::size_t pv = parent_[end];
        const std::size_t ppv = match_[pv];
        match_[end] = pv;
        match_[pv] = end;
        end = ppv;
      }
    }
    return size;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t lca(std::size_t a, std::size_t b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == kNone) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(std::size_t v, std::size_t b, std::size_t child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  std::size_t find_path(std::size_t root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    for (std::size_t i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      for (auto to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
          const std::size_t b = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (!in_blossom_[base_[i]]) continue;
            base_[i] = b;
            if (!used_[i]) {
              used_[i] = 1;
              queue.push_back(i);
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (match_[to] == kNone) return to;
          used_[match_[to]] = 1;
          queue.push_back(match_[to]);
        }
      }
    }
    return kNone;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::size_t n_;
  std::vector<std::size_t> match_, parent_, base_;
  std::vector<char> used_, in_blossom_;
};

}  // namespace detail

// Exact maximum-weight matching value on any sample by exhaustive search:
// subset dynamic programming over the touched vertices when there are at most
// `max_vertices` of them, otherwise branching over at most `max_edges`
// realized edges.
inline double max_weight_matching_general(const SampledGraph& g, GeneralSearchLimits limits = {}) {
  return detail::general_search(g, false, limits);
}

inline std::size_t max_cardinality_matching(const SampledGraph& g, GeneralSearchLimits = {}) {
  const auto& inst = g.instance();
  if (!inst.bipartite()) {
    std::vector<std::vector<std::size_t>> adj(inst.n());
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      if (!g.contains(e)) continue;
      adj[inst.edge(e).u].push_back(inst.edge(e).v);
      adj[inst.edge(e).v].push_back(inst.edge(e).u);
    }
    return detail::Blossom(adj).solve();
  }

  const std::size_t n = inst.n();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < inst.num_edges(); ++e)
    if (g.contains(e)) adj[inst.edge(e).u].push_back(inst.edge(e).v);
  std::vector<std::size_t> mate_of_right(n, std::numeric_limits<std::size_t>::max());
  std::vector<char> left_matched(n, 0);
  std::size_t size = 0;
  // Greedy start, then augment from every still-free left vertex.
  for (std::size_t a = 0; a < n; ++a) {
    for (auto b : adj[a]) {
      if (mate_of_right[b] == std::numeric_limits<std::size_t>::max()) {
        mate_of_right[b] = a;
        left_matched[a] = 1;
        ++size;
        break;
      }
    }
  }
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (left_matched[a] || adj[a].empty()) continue;
    if (detail::augment(a, adj, mate_of_right, seen, ++stamp)) ++size;
  }
  return size;
}

// nu_w(G) with the cheapest exact solver for the instance class.
inline double matching_value(const SampledGraph& g, GeneralSearchLimits limits = {}) {
  const auto& inst = g.instance();
  if (inst.bipartite())
    return inst.unweighted() ? static_cast<double>(max_cardinality_matching(g))
                             : max_weight_bipartite_value(g);
  if (inst.unweighted()) return static_cast<double>(max_cardinality_matching(g));
  return max_weight_matching_general(g, limits);
}

}  // namespace cgap
