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

#include <fstream>
#include <sstream>
#include <string>

#include "cgap/model.hpp"
#include "json.hpp"

namespace cgap {

using Json = nlohmann::ordered_json;

// {"kind":"bipartite"|"general","n":<int>,"edges":[{"u","v","x","w"}]}
// Missing "w" defaults to 1.0.
inline Instance instance_from_json(const Json& j) {
  try {
    const auto kind_str = j.at("kind").get<std::string>();
    GraphKind kind;
    if (kind_str == "bipartite") kind = GraphKind::kBipartite;
    else if (kind_str == "general") kind = GraphKind::kGeneral;
    else throw Error(ErrorCode::kParse, "unknown kind '" + kind_str + "'");
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 0 || n > std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorCode::kParse, "n out of range");
    std::vector<PotentialEdge> edges;
    for (const auto& je : j.at("edges")) {
      const auto u = je.at("u").get<std::int64_t>();
      const auto v = je.at("v").get<std::int64_t>();
      if (u < 0 || v < 0) throw Error(ErrorCode::kInvalidInstance, "negative endpoint");
      PotentialEdge e;
      e.u = static_cast<std::uint32_t>(u);
      e.v = static_cast<std::uint32_t>(v);
      e.x = je.at("x").get<double>();
      e.w = je.contains("w") ? je.at("w").get<double>() : 1.0;
      edges.push_back(e);
    }
    return Instance(kind, static_cast<std::uint32_t>(n), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, ex.what());
  }
}

inline Instance instance_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, ex.what());
  }
  return instance_from_json(j);
}

inline Instance instance_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_string(buf.str());
}

inline Json to_json(const Instance& inst) {
  Json edges = Json::array();
  for (const auto& e : inst.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"x", e.x}, {"w", e.w}});
  return {{"kind", to_string(inst.kind())}, {"n", inst.n()}, {"edges", std::move(edges)}};
}

inline Json to_json(const PolytopeReport& r) {
  Json j;
  j["degree_ok"] = r.degree_ok;
  j["max_load"] = r.max_load;
  if (r.violating_vertex)
    j["violating_vertex"] = {{"vertex", to_string(r.violating_vertex->vertex)},
                             {"load", r.violating_vertex->load}};
  j["odd_set_checked"] = r.odd_set_checked;
  if (r.odd_set_checked) j["odd_sets_ok"] = r.odd_sets_ok;
  if (r.violating_odd_set) {
    Json verts = Json::array();
    for (auto v : r.violating_odd_set->vertices) verts.push_back(to_string(v));
    j["violating_odd_set"] = {{"vertices", verts},
                              {"load", r.violating_odd_set->load},
                              {"bound", r.violating_odd_set->bound}};
  }
  return j;
}

}  // namespace cgap
