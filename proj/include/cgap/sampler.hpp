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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cgap/model.hpp"

namespace cgap {

inline constexpr std::size_t kMaxSupportEdges = 20;

using Seed = std::uint64_t;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: the bits for (seed, sample, slot) depend on nothing
// else, so any partition of samples across workers draws identical graphs.
constexpr std::uint64_t keyed_bits(Seed seed, std::uint64_t sample,
                                   std::uint64_t slot) noexcept {
  return mix64(mix64(mix64(seed) ^ sample) ^ (slot * 0xd1b54a32d192ed03ULL));
}

constexpr double keyed_uniform(Seed seed, std::uint64_t sample,
                               std::uint64_t slot) noexcept {
  return static_cast<double>(keyed_bits(seed, sample, slot) >> 11) * 0x1.0p-53;
}

// A realization of an instance: which potential edges are present. Holds a
// pointer to the instance, which must outlive it.
class SampledGraph {
 public:
  SampledGraph() = default;
  explicit SampledGraph(const Instance& inst)
      : inst_(&inst), present_(inst.num_edges(), 0) {}
  SampledGraph(const Instance& inst, std::vector<std::uint8_t> present)
      : inst_(&inst), present_(std::move(present)) {
    if (present_.size() != inst.num_edges())
      throw Error(ErrorCode::kInvalidInstance, "indicator length mismatch");
  }

  static SampledGraph from_mask(const Instance& inst, std::uint64_t mask) {
    SampledGraph g(inst);
    for (std::size_t e = 0; e < inst.num_edges(); ++e) g.present_[e] = (mask >> e) & 1;
    return g;
  }

  static SampledGraph from_edges(const Instance& inst, std::span<const std::size_t> edges) {
    SampledGraph g(inst);
    for (auto e : edges) g.present_.at(e) = 1;
    return g;
  }

  const Instance& instance() const { return *inst_; }
  bool contains(std::size_t e) const { return present_[e] != 0; }
  std::span<const std::uint8_t> indicators() const { return present_; }

  std::vector<std::size_t> realized() const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < present_.size(); ++e)
      if (present_[e]) out.push_back(e);
    return out;
  }

  std::size_t num_realized() const {
    std::size_t k = 0;
    for (auto b : present_) k += b;
    return k;
  }

  std::size_t degree(std::size_t flat_vertex) const {
    std::size_t d = 0;
    for (auto e : inst_->incident(flat_vertex)) d += present_[e];
    return d;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(inst_->num_vertices(), 0);
    for (std::size_t e = 0; e < present_.size(); ++e) {
      if (!present_[e]) continue;
      auto [a, b] = inst_->endpoints(e);
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  SampledGraph with_edge(std::size_t e) const {
    SampledGraph g = *this;
    g.present_.at(e) = 1;
    return g;
  }
  SampledGraph without_edge(std::size_t e) const {
    SampledGraph g = *this;
    g.present_.at(e) = 0;
    return g;
  }

  friend bool operator==(const SampledGraph& a, const SampledGraph& b) {
    return a.inst_ == b.inst_ && a.present_ == b.present_;
  }

 private:
  const Instance* inst_ = nullptr;
  std::vector<std::uint8_t> present_;
};

// Draw `index` of the stream keyed by `seed`. Edge e is present iff its
// keyed uniform falls below x_e.
inline SampledGraph sample(const Instance& inst, Seed seed, std::uint64_t index) {
  std::vector<std::uint8_t> present(inst.num_edges());
  for (std::size_t e = 0; e < inst.num_edges(); ++e)
    present[e] = keyed_uniform(seed, index, e) < inst.edge(e).x;
  return SampledGraph(inst, std::move(present));
}

inline void check_enumerable(const Instance& inst) {
  if (inst.num_edges() > kMaxSupportEdges)
    throw Error(ErrorCode::kSupportTooLarge,
                std::to_string(inst.num_edges()) + " edges exceeds " +
                    std::to_string(kMaxSupportEdges));
}

inline double outcome_probability(const Instance& inst, std::uint64_t mask) {
  double p = 1.0;
  for (std::size_t e = 0; e < inst.num_edges(); ++e) {
    const double x = inst.edge(e).x;
    p *= (mask >> e & 1) ? x : 1.0 - x;
  }
  return p;
}

// Visits every subset of the potential edges with its probability, in mask
// order. Zero-probability outcomes are skipped.
inline void for_each_outcome(const Instance& inst,
                             const std::function<void(const SampledGraph&, double)>& visit) {
  check_enumerable(inst);
  const std::uint64_t count = std::uint64_t{1} << inst.num_edges();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double p = outcome_probability(inst, mask);
    if (p == 0.0) continue;
    visit(SampledGraph::from_mask(inst, mask), p);
  }
}

// Materialized support, including zero-probability subsets.
inline std::vector<std::pair<SampledGraph, double>> enumerate_support(const Instance& inst) {
  check_enumerable(inst);
  std::vector<std::pair<SampledGraph, double>> out;
  const std::uint64_t count = std::uint64_t{1} << inst.num_edges();
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask)
    out.emplace_back(SampledGraph::from_mask(inst, mask), outcome_probability(inst, mask));
  return out;
}

}  // namespace cgap
