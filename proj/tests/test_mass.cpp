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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cgap/constants.hpp"
#include "cgap/estimator.hpp"
#include "cgap/gallery.hpp"
#include "cgap/mass.hpp"
#include "oracles.hpp"

using namespace cgap;

namespace {

FractionalVertexCover cover(std::vector<double> y) { return FractionalVertexCover{std::move(y)}; }

}  // namespace

TEST(WeightedScheme, SingleEdge) {
  Instance inst(GraphKind::kBipartite, 1, {{0, 0, 1.0}});
  const auto t = weighted_scheme(SampledGraph::from_mask(inst, 1), cover({1.0, 0.0}));
  EXPECT_DOUBLE_EQ(t.edge[0], 1.0);
  EXPECT_DOUBLE_EQ(t.vertex_total(), 0.0);
}

TEST(WeightedScheme, PathSplitsEvenly) {
  // u - v - w with v = R0 in the middle.
  Instance inst(GraphKind::kBipartite, 2, {{0, 0, 1.0}, {1, 0, 1.0}});
  const auto t = weighted_scheme(SampledGraph::from_mask(inst, 3), cover({0.0, 0.0, 1.0, 0.0}));
  EXPECT_DOUBLE_EQ(t.edge[0], 0.5);
  EXPECT_DOUBLE_EQ(t.edge[1], 0.5);
}

TEST(WeightedScheme, StarSplitsInThirds) {
  Instance inst(GraphKind::kBipartite, 3, {{0, 0, 1.0}, {0, 1, 1.0}, {0, 2, 1.0}});
  const auto t = weighted_scheme(SampledGraph::from_mask(inst, 7), cover({1.0, 0, 0, 0, 0, 0}));
  for (int e = 0; e < 3; ++e) EXPECT_NEAR(t.edge[e], 1.0 / 3.0, 1e-15);
}

TEST(WeightedScheme, IsolatedVerticesKeepMass) {
  Instance inst(GraphKind::kBipartite, 2, {{0, 0, 1.0}});
  const auto t = weighted_scheme(SampledGraph(inst), cover({0.3, 0.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(t.vertex[0], 0.3);
  EXPECT_DOUBLE_EQ(t.edge[0], 0.0);
}

TEST(UnweightedScheme, EqualNeighboursCancel) {
  Instance inst(GraphKind::kBipartite, 2, {{0, 0, 0.4}, {0, 1, 0.4}});
  const auto g = SampledGraph::from_mask(inst, 3);
  const auto y = max_weight_matching_bipartite(g).cover;
  const auto a = weighted_scheme(g, y), b = unweighted_scheme(g, y);
  for (int e = 0; e < 2; ++e) EXPECT_NEAR(a.edge[e], b.edge[e], 1e-15);
}

TEST(UnweightedScheme, IsolatedEdgeUnchanged) {
  Instance inst(GraphKind::kBipartite, 2, {{0, 0, 0.4}, {1, 1, 0.9}});
  const auto g = SampledGraph::from_mask(inst, 1);
  const auto y = max_weight_matching_bipartite(g).cover;
  EXPECT_EQ(weighted_scheme(g, y).edge, unweighted_scheme(g, y).edge);
}

TEST(UnweightedScheme, PairTransferFormula) {
  const double eps = 0.2;
  Instance inst(GraphKind::kBipartite, 2, {{0, 0, eps}, {0, 1, 1.0 - eps}});
  const auto x = inst.probabilities();
  const auto income = transfer_income(inst, x, {1.0 / 6.0});
  const double expected = (eps * (1 - eps) * (1 - eps) - eps * eps * (1 - eps)) / 6.0;
  EXPECT_NEAR(income[0], expected, 1e-15);
  EXPECT_NEAR(income[1], -expected, 1e-15);
}

TEST(UnweightedScheme, IncomeMatchesClosedForm) {
  // income_e = sum over neighbours f of c (x_e x_f^2 - x_e^2 x_f).
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kBipartite, 4, 12, false);
    const auto x = inst.probabilities();
    const auto income = transfer_income(inst, x);
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      double s = 0.0;
      for (std::size_t f = 0; f < inst.num_edges(); ++f) {
        if (f == e) continue;
        auto [a, b] = inst.endpoints(e);
        auto [c, d] = inst.endpoints(f);
        const int shared = (a == c) + (a == d) + (b == c) + (b == d);
        s += shared * (x[e] * x[f] * x[f] - x[e] * x[e] * x[f]) / 6.0;
      }
      EXPECT_NEAR(income[e], s, 1e-14);
    }
  }
}

TEST(Audit, FlagsNegativeVertex) {
  MassVector t;
  t.vertex = {-0.1, 0.6};
  t.edge = {0.0};
  const auto r = audit_masses(t, cover({0.2, 0.3}), 0.5);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations.front().check, "vertex_nonnegative");
  EXPECT_EQ(r.violations.front().location, "0");
}

TEST(Audit, FlagsConservationAndEdgeTotal) {
  MassVector t;
  t.vertex = {0.0, 0.0};
  t.edge = {0.9};
  const auto r = audit_masses(t, cover({0.5, 0.5}), 0.5);
  std::set<std::string> kinds;
  for (const auto& v : r.violations) kinds.insert(v.check + ":" + v.location);
  EXPECT_TRUE(kinds.count("conservation:total"));
  EXPECT_TRUE(kinds.count("conservation:cover_vs_nu"));
  EXPECT_TRUE(kinds.count("edge_total:total"));
}

TEST(Audit, BothSchemesConserveOnRandomInstances) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::uint32_t> size(1, 6);
  for (int i = 0; i < 1000; ++i) {
    const bool weighted = i % 2;
    const auto inst = oracle::random_instance(rng, GraphKind::kBipartite, size(rng), 12, weighted);
    const auto g = sample(inst, 5, i);
    const auto sol = max_weight_matching_bipartite(g);
    const auto t = weighted ? weighted_scheme(g, sol.cover) : unweighted_scheme(g, sol.cover);
    const auto r = audit_masses(t, sol.cover, sol.value);
    ASSERT_TRUE(r.passed()) << "instance " << i;
  }
}

TEST(Certificate, WeightedFloorOnEveryEdge) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 300; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kBipartite, 4, 10, true);
    for (const auto& c : exact_edge_certificates(inst)) {
      if (std::isnan(c.value)) continue;
      ASSERT_GE(c.value, kWeightedBipartiteFloor - 1e-9) << "instance " << i << " edge " << c.edge;
    }
  }
}

TEST(Certificate, ExpectedEdgeMassMatchesBruteForce) {
  // E[t_e] by brute force over masks against the certificate.
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kBipartite, 3, 7, true);
    std::vector<double> expected(inst.num_edges(), 0.0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << inst.num_edges()); ++m) {
      const auto g = SampledGraph::from_mask(inst, m);
      const auto t = weighted_scheme(g, max_weight_matching_bipartite(g).cover);
      for (std::size_t e = 0; e < inst.num_edges(); ++e) expected[e] += oracle::mask_probability(inst, m) * t.edge[e];
    }
    const auto cert = exact_edge_certificates(inst);
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      const double denom = inst.edge(e).w * inst.edge(e).x;
      if (denom > 0) {
        EXPECT_NEAR(cert[e].value, expected[e] / denom, 1e-9);
      }
    }
  }
}
