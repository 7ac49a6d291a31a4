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

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsplit/fields.hpp"
#include "hsplit/manifold.hpp"

namespace hsplit {

/// Serial is the reference; Parallel distributes items over OpenMP threads.
/// Both produce bitwise identical per-item values since every item is
/// evaluated independently and reductions run serially afterwards.
enum class Execution { Serial, Parallel };

struct BatchItemError {
  std::size_t index;
  std::string message;
};

struct BatchResult {
  /// NaN for items that threw.
  std::vector<double> values;
  std::vector<BatchItemError> errors;
};

/// values[i] = f(i). Exceptions are caught per item. `threads` <= 0 uses the
/// OpenMP default.
BatchResult map_batch(std::size_t n, const std::function<double(std::size_t)>& f, Execution exec, int threads = 0);

struct BatchSummary {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  std::size_t count = 0;
  std::size_t failures = 0;
};

/// Serial min/max over the finite values; NaN items count as failures.
BatchSummary summarize(const BatchResult& r);

using PointPair = std::pair<Point, Point>;
using PointTriple = std::array<Point, 3>;
/// Two geodesics [a1, b1] and [a2, b2].
using GeodesicPair = std::array<Point, 4>;

/// max(d(exp_x log_x y, y), |log_x exp_x v - v|) with v = log_x y.
BatchResult round_trip_errors(std::span<const PointPair> pairs, Execution exec, int threads = 0);
/// Comparison-triangle residual min_residual() per triangle.
BatchResult comparison_residuals(std::span<const PointTriple> tris, Execution exec, int threads = 0);
/// Minimum over the three rotations of the law-of-cosines slack.
BatchResult cosine_law_slacks(std::span<const PointTriple> tris, Execution exec, int threads = 0);
BatchResult distance_convexity_slacks(std::span<const GeodesicPair> geos, std::span<const double> grid, Execution exec,
                                      int threads = 0);
/// Minimum monotonicity slack over the generators at each pair.
BatchResult monotonicity_slacks(const VectorField& a, std::span<const PointPair> pairs, Execution exec,
                                int threads = 0);
/// max_k Phi(t_{k+1}) - Phi(t_k) per pair for the map t.
BatchResult firm_nonexpansive_increases(const PointMap& t, std::span<const PointPair> pairs,
                                        std::span<const double> grid, Execution exec, int threads = 0);

}  // namespace hsplit
