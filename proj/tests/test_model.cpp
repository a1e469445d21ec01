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

#include "cgap/gallery.hpp"
#include "cgap/json_io.hpp"
#include "cgap/model.hpp"
#include "oracles.hpp"

using namespace cgap;

namespace {

Instance single(double x, double w = 1.0) {
  return Instance(GraphKind::kBipartite, 1, {{0, 0, x, w}});
}

Instance triangle(double x) {
  return Instance(GraphKind::kGeneral, 3, {{0, 1, x}, {1, 2, x}, {0, 2, x}});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(Instance, RejectsMalformedEdges) {
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{0, 3, 0.5}}); }), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{1, 1, 0.5}}); }), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{0, 1, 1.5}}); }), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{0, 1, -0.1}}); }), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{0, 1, 0.5, -1.0}}); }), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{0, 1, 0.5, std::nan("")}}); }),
            ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { Instance(GraphKind::kGeneral, 3, {{0, 1, 0.2}, {1, 0, 0.2}}); }),
            ErrorCode::kInvalidInstance);
}

TEST(Instance, BipartiteAllowsSameIndexOnBothSides) {
  Instance inst(GraphKind::kBipartite, 2, {{0, 0, 0.5}, {1, 0, 0.5}, {0, 1, 0.5}});
  EXPECT_EQ(inst.num_vertices(), 4u);
  EXPECT_EQ(inst.flat_v(0), 2u);
  EXPECT_EQ(to_string(inst.vertex(3)), "R1");
  EXPECT_EQ(to_string(inst.vertex(0)), "L0");
  EXPECT_EQ(inst.incident(2).size(), 2u);
  // (0,1) and (1,0) are different bipartite pairs.
  EXPECT_NO_THROW(Instance(GraphKind::kBipartite, 2, {{0, 1, 0.5}, {1, 0, 0.5}}));
}

TEST(Polytope, SingleEdgeAtFullProbability) {
  const auto r = validate_polytope(single(1.0), true);
  EXPECT_TRUE(r.degree_ok);
  EXPECT_TRUE(r.odd_set_checked);
  EXPECT_TRUE(r.odd_sets_ok);
  EXPECT_DOUBLE_EQ(r.max_load, 1.0);
}

TEST(Polytope, OverloadedStar) {
  Instance star(GraphKind::kGeneral, 4, {{0, 1, 0.4}, {0, 2, 0.4}, {0, 3, 0.4}});
  const auto r = validate_polytope(star, false);
  EXPECT_FALSE(r.degree_ok);
  ASSERT_TRUE(r.violating_vertex.has_value());
  EXPECT_EQ(r.violating_vertex->vertex.index, 0u);
  EXPECT_NEAR(r.violating_vertex->load, 1.2, 1e-12);
  EXPECT_FALSE(r.odd_set_checked);
}

TEST(Polytope, TriangleViolatesOddSet) {
  const auto r = validate_polytope(triangle(0.5), true);
  EXPECT_TRUE(r.degree_ok);
  EXPECT_FALSE(r.odd_sets_ok);
  ASSERT_TRUE(r.violating_odd_set.has_value());
  EXPECT_EQ(r.violating_odd_set->vertices.size(), 3u);
  EXPECT_NEAR(r.violating_odd_set->load, 1.5, 1e-12);
  EXPECT_DOUBLE_EQ(r.violating_odd_set->bound, 1.0);
  EXPECT_FALSE(r.feasible());
}

TEST(Polytope, ReportsLexicographicallySmallestOddSet) {
  // Two disjoint heavy triangles; {0,1,2} must be reported.
  Instance inst(GraphKind::kGeneral, 6,
                {{3, 4, 0.5}, {4, 5, 0.5}, {3, 5, 0.5}, {0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}});
  const auto r = validate_polytope(inst, true);
  ASSERT_TRUE(r.violating_odd_set.has_value());
  std::vector<std::uint32_t> idx;
  for (auto v : r.violating_odd_set->vertices) idx.push_back(v.index);
  EXPECT_EQ(idx, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Polytope, ToleranceBoundary) {
  Instance at(GraphKind::kGeneral, 3, {{0, 1, 0.5}, {0, 2, 0.5 + 0.5e-9}});
  EXPECT_TRUE(validate_polytope(at, false).degree_ok);
  Instance over(GraphKind::kGeneral, 3, {{0, 1, 0.5}, {0, 2, 0.5 + 2e-9}});
  EXPECT_FALSE(validate_polytope(over, false).degree_ok);
}

TEST(Polytope, OddSetCutoffIsExplicit) {
  Instance big(GraphKind::kGeneral, 15, {{0, 1, 0.5}});
  EXPECT_EQ(code_of([&] { validate_polytope(big, true); }), ErrorCode::kOddSetCheckInfeasible);
  EXPECT_NO_THROW(validate_polytope(big, false));
  Instance ok(GraphKind::kGeneral, 14, {{0, 1, 0.5}});
  EXPECT_TRUE(validate_polytope(ok, true).odd_set_checked);
}

TEST(Polytope, DeterministicReport) {
  const auto a = to_json(validate_polytope(triangle(0.6), true)).dump();
  const auto b = to_json(validate_polytope(triangle(0.6), true)).dump();
  EXPECT_EQ(a, b);
}

TEST(Polytope, ScalingPreservesFeasibility) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kGeneral, 5, 10, true);
    if (!validate_polytope(inst, true).feasible()) continue;
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) EXPECT_TRUE(validate_polytope(inst.scaled(t), true).feasible());
  }
}

TEST(Fractional, Examples) {
  EXPECT_NEAR(fractional_value(single(0.7, 2.0)), 1.4, 1e-12);
  EXPECT_EQ(fractional_value(Instance(GraphKind::kGeneral, 0, {})), 0.0);
  EXPECT_NEAR(fractional_value(gen_pendant_star(3, 0.5)), 1.5, 1e-12);
  EXPECT_NEAR(fractional_value(single(0.7, 2.0), true), 0.7, 1e-12);
}

TEST(Fractional, LinearInWeightsAndProbabilities) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kBipartite, 4, 8, true);
    const double t = u(rng);
    EXPECT_NEAR(fractional_value(inst.scaled(t)), t * fractional_value(inst), 1e-12);
    std::vector<PotentialEdge> doubled(inst.edges().begin(), inst.edges().end());
    for (auto& e : doubled) e.w *= 2.5;
    EXPECT_NEAR(fractional_value(Instance(inst.kind(), inst.n(), doubled)), 2.5 * fractional_value(inst), 1e-12);
  }
}

TEST(Json, RoundTripAndDefaults) {
  const auto inst = instance_from_string(R"({"kind":"bipartite","n":2,"edges":[{"u":0,"v":1,"x":0.25}]})");
  EXPECT_TRUE(inst.bipartite());
  EXPECT_EQ(inst.edge(0).w, 1.0);
  const auto again = instance_from_json(to_json(inst));
  EXPECT_EQ(to_json(again).dump(), to_json(inst).dump());
}

TEST(Json, ParseErrors) {
  EXPECT_EQ(code_of([] { instance_from_string("{"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { instance_from_string(R"({"kind":"tree","n":1,"edges":[]})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { instance_from_string(R"({"kind":"general","edges":[]})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { instance_from_string(R"({"kind":"general","n":2,"edges":[{"u":0,"v":1,"x":2}]})"); }),
            ErrorCode::kInvalidInstance);
  EXPECT_EQ(code_of([] { instance_from_file("/nonexistent/file.json"); }), ErrorCode::kParse);
}
