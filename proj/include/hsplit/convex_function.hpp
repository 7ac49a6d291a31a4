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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsplit/manifold.hpp"

namespace hsplit {

/// A registered geodesically convex function g: M -> R.
///
/// `subgradients(x)` returns finitely many generators whose convex hull is a
/// subset of the subdifferential at x containing its minimum-norm element
/// (for smooth g, the single Riemannian gradient). `contains`, when set,
/// decides full membership s in the subdifferential at x.
struct ConvexFunction {
  ConvexFunction(std::string name_, Manifold manifold_) : name(std::move(name_)), manifold(std::move(manifold_)) {}

  std::string name;
  Manifold manifold;
  std::function<double(const Point&)> value;
  std::function<std::vector<TangentVector>(const Point&)> subgradients;
  std::function<bool(const Point&, const TangentVector&)> contains;
  /// Closed-form argmin_y g(y) + d^2(y, x) / (2 lambda), when available.
  std::function<Point(const Point&, double)> prox;
  std::vector<Point> anchors;
  std::vector<Point> minimizers;

  double operator()(const Point& x) const { return value(x); }
};

/// (w/2) d^2(x, p); gradient -w log_x p.
ConvexFunction half_squared_distance(const Point& anchor, double weight = 1.0);

/// sum_i (w_i/2) d^2(x, p_i). `minimizer` registers a known weighted mean.
ConvexFunction weighted_half_squared_distances(std::vector<Point> anchors, std::vector<double> weights,
                                               std::optional<Point> minimizer = std::nullopt);

/// ||x|| on R^n. At 0 the generators are +-e_i; `contains` tests ||s|| <= 1.
ConvexFunction euclidean_norm(int dim);

/// <c, x> on R^n.
ConvexFunction linear_function(Eigen::VectorXd c);

/// (1/2) (x - p)^T Q (x - p) on R^n with Q symmetric positive semidefinite.
ConvexFunction euclidean_quadratic(Eigen::MatrixXd q, Eigen::VectorXd center);

ConvexFunction zero_function(const Manifold& m);

/// Convexity of t -> g(gamma(t)) on a grid: min over interior points of
/// (1-t) g(x) + t g(y) - g(gamma(t)).
double geodesic_convexity_slack(const std::function<double(const Point&)>& g, const Point& x, const Point& y,
                                std::span<const double> grid);

}  // namespace hsplit
