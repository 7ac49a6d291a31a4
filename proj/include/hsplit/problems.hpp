// Copyright 2026 The hsplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "hsplit/apps.hpp"
#include "hsplit/splitting.hpp"

namespace hsplit {

struct ProblemInfo {
  std::string id;
  std::string manifold;
  std::string algorithm;
  std::string description;
  std::string provenance;
  std::string reference;
};

/// Ids of the shipped problems in listing order.
const std::vector<std::string>& problem_ids();

/// Builds a shipped problem; throws UnknownId.
ProblemInstance make_problem(const std::string& id);

std::vector<ProblemInfo> list_problems();

/// Weighted Frechet mean by the fixed-point flow x <- exp_x(sum_i w_i log_x p_i)
/// with normalized weights; throws NonconvergenceError after max_iter.
Point frechet_mean_fixed_point(std::span<const Point> anchors, std::span<const double> weights, double tol = 1e-14,
                               int max_iter = 10000);

/// Anchor sets of the shipped mean problems.
std::vector<Point> hyperbolic_frechet_anchors();
std::vector<Point> spd_karcher_anchors();

}  // namespace hsplit
