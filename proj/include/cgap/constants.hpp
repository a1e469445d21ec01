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

#include <numbers>

namespace cgap {

// Lower bounds on E[nu_w(G)] / sum w_e x_e for x in the matching polytope.
inline constexpr double kUnweightedBipartiteFloor = 0.476;
inline constexpr double kWeightedBipartiteFloor = 1.0 - 3.0 / (2.0 * std::numbers::e);
inline constexpr double kGeneralFloor =
    (std::numbers::e * std::numbers::e - 1.0) / (2.0 * std::numbers::e * std::numbers::e);

// Karp-Sipser asymptotic upper bound for the unweighted model at x = 1/n.
inline constexpr double kKarpSipserUpperBound = 0.54;

}  // namespace cgap
