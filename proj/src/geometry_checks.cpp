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

#include <algorithm>
#include <limits>
#include <cmath>

#include "hsplit/errors.hpp"
#include "hsplit/manifold.hpp"
#include "hsplit/sampling.hpp"

namespace hsplit {

double GeodesicTriangleReport::min_residual() const {
  return *std::min_element(cosine_law_residuals.begin(), cosine_law_residuals.end());
}

GeodesicTriangleReport comparison_triangle(const Point& p1, const Point& p2, const Point& p3) {
  GeodesicTriangleReport rep{{p1, p2, p3}, {}, {}, {}};
  const auto& v = rep.vertices;
  for (int i = 0; i < 3; ++i) rep.side_lengths[i] = dist(v[i], v[(i + 1) % 3]);
  for (double s : rep.side_lengths) {
    if (!std::isfinite(s)) throw NonFiniteInput("comparison_triangle: non-finite side length");
  }

  // p1 at the origin, p2 on the positive x-axis, p3 in the upper half plane.
  const double a = rep.side_lengths[0];  // |p1 p2|
  const double b = rep.side_lengths[1];  // |p2 p3|
  const double c = rep.side_lengths[2];  // |p3 p1|
  rep.comparison_vertices[0] = Eigen::Vector2d::Zero();
  rep.comparison_vertices[1] = Eigen::Vector2d(a, 0.0);
  if (a > 0.0) {
    const double px = (a * a + c * c - b * b) / (2.0 * a);
    rep.comparison_vertices[2] = Eigen::Vector2d(px, std::sqrt(std::max(0.0, c * c - px * px)));
  } else {
    rep.comparison_vertices[2] = Eigen::Vector2d(c, 0.0);
  }

  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double manifold_ip = inner(log_map(v[i], v[j]), log_map(v[i], v[k]));
    // Law of cosines: the planar inner product is fixed by the side lengths.
    const double dij = rep.side_lengths[i], dki = rep.side_lengths[k], djk = rep.side_lengths[j];
    const double planar_ip = 0.5 * (dij * dij + dki * dki - djk * djk);
    rep.cosine_law_residuals[i] = manifold_ip - planar_ip;
  }
  return rep;
}

std::array<double, 3> law_of_cosines_slacks(const Point& p1, const Point& p2, const Point& p3) {
  const std::array<Point, 3> p{p1, p2, p3};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const Point& a = p[i];
    const Point& b = p[(i + 1) % 3];
    const Point& c = p[(i + 2) % 3];
    const double dab = dist(a, b), dbc = dist(b, c), dca = dist(c, a);
    const double lhs = dab * dab + dbc * dbc - 2.0 * inner(log_map(b, a), log_map(b, c));
    out[i] = dca * dca - lhs;
  }
  return out;
}

double distance_convexity_slack(const Point& a1, const Point& b1, const Point& a2, const Point& b2,
                                std::span<const double> grid) {
  const double d0 = dist(a1, a2), d1 = dist(b1, b2);
  const TangentVector v1 = log_map(a1, b1), v2 = log_map(a2, b2);
  double worst = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    const Point g1 = t == 1.0 ? b1 : exp_map(a1, v1 * t);
    const Point g2 = t == 1.0 ? b2 : exp_map(a2, v2 * t);
    worst = std::min(worst, (1.0 - t) * d0 + t * d1 - dist(g1, g2));
  }
  return worst;
}

std::vector<double> unit_grid(int n) {
  if (n < 2) throw InvalidArgument("grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return g;
}

TangentVector random_tangent(const Point& base, Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  const auto basis = base.manifold().tangent_basis(base);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(base.size());
  for (const auto& e : basis) v += normal(rng) * e.components();
  return base.manifold().project_tangent(base, std::move(v));
}

TangentVector random_direction(const Point& base, Rng& rng, double length) {
  for (;;) {
    TangentVector v = random_tangent(base, rng, 1.0);
    const double n = norm(v);
    if (n > 1e-12) return v * (length / n);
  }
}

Point random_point_near(const Point& center, Rng& rng, double radius) {
  std::uniform_real_distribution<double> uni(0.0, radius);
  return exp_map(center, random_direction(center, rng, uni(rng)));
}

Point random_point(const Manifold& m, Rng& rng, double radius) { return random_point_near(m.origin(), rng, radius); }

}  // namespace hsplit
