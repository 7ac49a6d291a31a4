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

#include "hsplit/problems.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "hsplit/errors.hpp"

namespace hsplit {

namespace {

Point hyperbolic_point(const Manifold& h, double a, double b) {
  const Point o = h.origin();
  return h.exp(o, h.tangent(o, {0.0, a, b}));
}

ProblemInstance euclid_quad() {
  const Manifold e = Manifold::euclidean(1);
  Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  return ProblemInstance{
      .id = "euclid_quad",
      .manifold = e,
      .field = linear_field(one),
      .bifunction = convex_difference(euclidean_quadratic(one, Eigen::VectorXd::Zero(1))),
      .reference = e.origin(),
      .x0 = e.point({8.0}),
      .description = "A(x) = x and F(x,y) = y^2/2 - x^2/2 on R",
      .provenance = "resolvents x/(1+lambda) in closed form; 0 is the only common zero",
  };
}

ProblemInstance euclid_linear3() {
  const Manifold e = Manifold::euclidean(3);
  Eigen::MatrixXd q(3, 3);
  q << 2, 1, 0, -1, 1, 0, 0, 0, 0;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 3);
  g(2, 2) = 1.0;
  return ProblemInstance{
      .id = "euclid_linear3",
      .manifold = e,
      .field = linear_field(q),
      .bifunction = convex_difference(euclidean_quadratic(g, Eigen::Vector3d(0, 0, 1))),
      .reference = e.point({0.0, 0.0, 1.0}),
      .x0 = e.point({3.0, -2.0, 4.0}),
      .description = "nonsymmetric monotone linear field with kernel span(e3), F from (x3 - 1)^2/2",
      .provenance = "kernel of A meets the plane x3 = 1 in (0, 0, 1)",
  };
}

ProblemInstance hyp_distance() {
  const Manifold h = Manifold::hyperboloid(2);
  const Point p = hyperbolic_point(h, 0.6, -0.3);
  return ProblemInstance{
      .id = "hyp_distance",
      .manifold = h,
      .field = distance_gradient_field(p),
      .bifunction = convex_difference(half_squared_distance(p)),
      .reference = p,
      .x0 = hyperbolic_point(h, -2.0, 1.5),
      .description = "A = gradient of d^2(., p)/2 and F from the same function on H2",
      .provenance = "both resolvents move along the geodesic to p; the common solution is p",
  };
}

ProblemInstance hyp_frechet() {
  const Manifold h = Manifold::hyperboloid(2);
  const std::vector<Point> anchors = hyperbolic_frechet_anchors();
  const std::vector<double> w(anchors.size(), 1.0 / static_cast<double>(anchors.size()));
  const Point mean = frechet_mean_fixed_point(anchors, w);
  const ConvexFunction g = weighted_half_squared_distances(anchors, w, mean);
  return ProblemInstance{
      .id = "hyp_frechet",
      .manifold = h,
      .field = subdifferential_of(g),
      .bifunction = convex_difference(g),
      .reference = mean,
      .x0 = hyperbolic_point(h, 1.5, 1.5),
      .description = "Frechet mean of three points on H2 with equal weights",
      .provenance = "reference from the fixed-point mean flow run to 1e-14",
  };
}

ProblemInstance spd_karcher2() {
  const Manifold s = Manifold::spd(2);
  const std::vector<Point> anchors = spd_karcher_anchors();
  const std::vector<double> w{0.5, 0.5};
  const Point mean = s.point({2.0, 0.0, 0.0, 2.0});
  const ConvexFunction g = weighted_half_squared_distances(anchors, w, mean);
  return ProblemInstance{
      .id = "spd_karcher2",
      .manifold = s,
      .field = subdifferential_of(g),
      .bifunction = convex_difference(g),
      .reference = mean,
      .x0 = s.point({3.0, 0.5, 0.5, 1.0}),
      .description = "Karcher mean of I and 4I in SPD(2)",
      .provenance = "commuting anchors: the mean is exp of the mean log, 2I",
  };
}

ProblemInstance saddle_bilinear() {
  const SaddleProblem sp = bilinear_saddle(1);
  ProblemInstance p = saddle_problem_instance(sp, std::nullopt, sp.product().point({1.0, 1.0}), "saddle_bilinear");
  p.description = "H(x, y) = xy on R x R, no equilibrium part";
  p.provenance = "unique saddle (0, 0) of the bilinear form";
  return p;
}

ProblemInstance saddle_from_distance(const std::string& id, const Point& a, const Point& b, const Point& x0,
                                     std::string description) {
  const SaddleProblem sp = distance_saddle(a, b);
  const Manifold m = sp.product();
  const std::array<Point, 2> parts{a, b};
  ProblemInstance p =
      saddle_problem_instance(sp, convex_difference(half_squared_distance(m.combine(parts))), x0, id);
  p.description = std::move(description);
  p.provenance = "separable saddle at (a, b), also the minimizer behind F";
  return p;
}

ProblemInstance saddle_quadratic() {
  const Manifold e = Manifold::euclidean(1);
  const Manifold m = Manifold::product({e, e});
  return saddle_from_distance("saddle_quadratic", e.point({1.0}), e.point({2.0}), m.point({-3.0, 5.0}),
                              "H(x, y) = (y - 2)^2/2 - (x - 1)^2/2 on R x R with F from d^2(., (1, 2))/2");
}

ProblemInstance saddle_hyperbolic() {
  const Manifold h = Manifold::hyperboloid(2);
  const Manifold m = Manifold::product({h, h});
  const std::array<Point, 2> start{hyperbolic_point(h, 1.0, 0.0), hyperbolic_point(h, -1.0, 1.0)};
  return saddle_from_distance("saddle_hyperbolic", hyperbolic_point(h, 0.2, 0.1), hyperbolic_point(h, 0.0, -0.5),
                              m.combine(start), "H(x, y) = d^2(y, b)/2 - d^2(x, a)/2 on H2 x H2");
}

ProblemInstance ep_euclid() {
  const Manifold e = Manifold::euclidean(2);
  Eigen::MatrixXd q(2, 2);
  q << 1, 2, -2, 1;
  return ProblemInstance{
      .id = "ep_euclid",
      .manifold = e,
      .field = std::nullopt,
      .bifunction = field_induced(linear_field(q)),
      .reference = e.origin(),
      .x0 = e.point({3.0, 4.0}),
      .description = "F(x, y) = <Qx, y - x> with Q = [[1, 2], [-2, 1]] on R2",
      .provenance = "Q is invertible with positive symmetric part, so EP(F) = {0}",
  };
}

ProblemInstance ep_hyperbolic() {
  const Manifold h = Manifold::hyperboloid(2);
  const Point p = hyperbolic_point(h, -0.4, 0.8);
  return ProblemInstance{
      .id = "ep_hyperbolic",
      .manifold = h,
      .field = std::nullopt,
      .bifunction = convex_difference(half_squared_distance(p, 2.0)),
      .reference = p,
      .x0 = hyperbolic_point(h, 2.0, 0.5),
      .description = "F(x, y) = d^2(y, p) - d^2(x, p) on H2",
      .provenance = "EP(F) is the minimizer set {p}",
  };
}

ProblemInstance inclusion_euclid() {
  const Manifold e = Manifold::euclidean(2);
  return ProblemInstance{
      .id = "inclusion_euclid",
      .manifold = e,
      .field = subdifferential_of(euclidean_norm(2)),
      .bifunction = std::nullopt,
      .reference = e.origin(),
      .x0 = e.point({2.0, -1.0}),
      .description = "A = subdifferential of the Euclidean norm on R2",
      .provenance = "0 is the only zero; the resolvent is soft thresholding",
  };
}

using Factory = std::function<ProblemInstance()>;

const std::vector<std::pair<std::string, Factory>>& factories() {
  static const std::vector<std::pair<std::string, Factory>> f{
      {"euclid_quad", euclid_quad},         {"euclid_linear3", euclid_linear3},
      {"hyp_distance", hyp_distance},       {"hyp_frechet", hyp_frechet},
      {"spd_karcher2", spd_karcher2},       {"saddle_bilinear", saddle_bilinear},
      {"saddle_quadratic", saddle_quadratic}, {"saddle_hyperbolic", saddle_hyperbolic},
      {"ep_euclid", ep_euclid},             {"ep_hyperbolic", ep_hyperbolic},
      {"inclusion_euclid", inclusion_euclid},
  };
  return f;
}

}  // namespace

std::vector<Point> hyperbolic_frechet_anchors() {
  const Manifold h = Manifold::hyperboloid(2);
  return {hyperbolic_point(h, 1.0, 0.0), hyperbolic_point(h, -0.5, 0.8), hyperbolic_point(h, -0.3, -1.2)};
}

std::vector<Point> spd_karcher_anchors() {
  const Manifold s = Manifold::spd(2);
  return {s.point({1.0, 0.0, 0.0, 1.0}), s.point({4.0, 0.0, 0.0, 4.0})};
}

Point frechet_mean_fixed_point(std::span<const Point> anchors, std::span<const double> weights, double tol,
                               int max_iter) {
  if (anchors.empty() || anchors.size() != weights.size())
    throw InvalidArgument("frechet_mean_fixed_point: anchors and weights must match and be nonempty");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidArgument("frechet_mean_fixed_point: weights must be positive");
    total += w;
  }
  Point x = anchors.front();
  for (int it = 0; it < max_iter; ++it) {
    TangentVector v = x.manifold().zero(x);
    for (std::size_t i = 0; i < anchors.size(); ++i) v = v + log_map(x, anchors[i]) * (weights[i] / total);
    if (norm(v) <= tol) return x;
    x = exp_map(x, v);
  }
  throw NonconvergenceError("frechet_mean_fixed_point did not converge", 0.0, max_iter);
}

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, f] : factories()) out.push_back(id);
    return out;
  }();
  return ids;
}

ProblemInstance make_problem(const std::string& id) {
  for (const auto& [key, f] : factories()) {
    if (key == id) {
      ProblemInstance p = f();
      p.validate();
      return p;
    }
  }
  throw UnknownId("unknown problem '" + id + "'");
}

std::vector<ProblemInfo> list_problems() {
  std::vector<ProblemInfo> out;
  for (const auto& id : problem_ids()) {
    const ProblemInstance p = make_problem(id);
    out.push_back(ProblemInfo{p.id, p.manifold.tag(), to_string(natural_algorithm(p)), p.description, p.provenance,
                              p.reference ? serialize_point(*p.reference) : "none"});
  }
  return out;
}

}  // namespace hsplit
