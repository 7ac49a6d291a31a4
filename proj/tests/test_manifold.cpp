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

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "hsplit/errors.hpp"
#include "hsplit/manifold.hpp"
#include "hsplit/sampling.hpp"

using namespace hsplit;

namespace {

double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return -a[0] * b[0] + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

// Integrates x'' = <x', x'>_L x with classical RK4; the hyperboloid geodesic
// equation in ambient coordinates.
Eigen::VectorXd rk4_hyperboloid_geodesic(Eigen::VectorXd x, Eigen::VectorXd v, int steps) {
  const double h = 1.0 / steps;
  auto accel = [](const Eigen::VectorXd& p, const Eigen::VectorXd& q) { return minkowski(q, q) * p; };
  for (int i = 0; i < steps; ++i) {
    const Eigen::VectorXd k1x = v, k1v = accel(x, v);
    const Eigen::VectorXd k2x = v + 0.5 * h * k1v, k2v = accel(x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    const Eigen::VectorXd k3x = v + 0.5 * h * k2v, k3v = accel(x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    const Eigen::VectorXd k4x = v + h * k3v, k4v = accel(x + h * k3x, v + h * k3v);
    x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  return x;
}

// Affine-invariant distance from the generalized eigenproblem B w = l A w.
double spd_distance_oracle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(b, a);
  double s = 0.0;
  for (double l : ges.eigenvalues()) s += std::log(l) * std::log(l);
  return std::sqrt(s);
}

Eigen::MatrixXd as_matrix(const Point& p, int k) { return Eigen::Map<const Eigen::MatrixXd>(p.coords().data(), k, k); }

Point spd_point(const Manifold& m, const Eigen::MatrixXd& a) {
  return m.point(Eigen::Map<const Eigen::VectorXd>(a.data(), a.size()));
}

}  // namespace

TEST_CASE("euclidean exp, log and dist are vector arithmetic") {
  const Manifold e2 = Manifold::euclidean(2);
  const Point o = e2.point({0, 0});
  const Point y = e2.exp(o, e2.tangent(o, {3, 4}));
  CHECK(y[0] == 3.0);
  CHECK(y[1] == 4.0);
  CHECK(e2.dist(o, y) == doctest::Approx(5.0).epsilon(1e-15));
  const Manifold e3 = Manifold::euclidean(3);
  const TangentVector v = e3.log(e3.point({1, 1, 1}), e3.point({2, 0, 1}));
  CHECK(v[0] == 1.0);
  CHECK(v[1] == -1.0);
  CHECK(v[2] == 0.0);
  const Point mid = geodesic_point(o, y, 0.5);
  CHECK(mid[0] == doctest::Approx(1.5));
  CHECK(mid[1] == doctest::Approx(2.0));
}

TEST_CASE("hyperboloid exp agrees with an RK4 integration of the geodesic equation") {
  const Manifold h = Manifold::hyperboloid(3);
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Point x = random_point(h, rng, 3.0);
    const TangentVector v = random_tangent(x, rng, 1.0);
    const Point y = h.exp(x, v);
    const Eigen::VectorXd oracle = rk4_hyperboloid_geodesic(x.coords(), v.components(), 4000);
    CHECK((y.coords() - oracle).norm() / std::max(1.0, oracle.norm()) < 1e-9);
    // Geodesics have constant speed: d(x, exp_x v) = |v|.
    CHECK(h.dist(x, y) == doctest::Approx(norm(v)).epsilon(1e-10));
  }
}

TEST_CASE("hyperboloid distance is arcosh of minus the Minkowski product") {
  const Manifold h = Manifold::hyperboloid(2);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Point x = random_point(h, rng, 4.0);
    const Point y = random_point(h, rng, 4.0);
    const double oracle = std::acosh(std::max(1.0, -minkowski(x.coords(), y.coords())));
    CHECK(h.dist(x, y) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("spd distance matches the generalized eigenvalue formula") {
  for (int k : {2, 3}) {
    const Manifold m = Manifold::spd(k);
    Rng rng(17 + k);
    for (int trial = 0; trial < 30; ++trial) {
      const Point a = random_point(m, rng, 2.0);
      const Point b = random_point(m, rng, 2.0);
      CHECK(m.dist(a, b) == doctest::Approx(spd_distance_oracle(as_matrix(a, k), as_matrix(b, k))).epsilon(1e-9));
    }
  }
}

TEST_CASE("spd distance between commuting diagonals") {
  const Manifold m = Manifold::spd(2);
  const Point a = spd_point(m, Eigen::Vector2d(1.0, 2.0).asDiagonal().toDenseMatrix());
  const Point b = spd_point(m, Eigen::Vector2d(std::exp(1.0), 2.0 * std::exp(-2.0)).asDiagonal().toDenseMatrix());
  CHECK(m.dist(a, b) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("round trips on every instance") {
  const std::vector<Manifold> ms{Manifold::euclidean(3), Manifold::hyperboloid(2), Manifold::hyperboloid(5),
                                 Manifold::spd(2), Manifold::spd(3),
                                 Manifold::product({Manifold::euclidean(1), Manifold::hyperboloid(2)})};
  for (const Manifold& m : ms) {
    Rng rng(3);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Point x = random_point(m, rng, 5.0);
      const Point y = random_point(m, rng, 5.0);
      const TangentVector v = m.log(x, y);
      worst = std::max(worst, m.dist(m.exp(x, v), y));
      worst = std::max(worst, norm(m.log(x, m.exp(x, v)) - v));
    }
    INFO(m.tag());
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("product distance is the root sum of squared factor distances") {
  const Manifold h = Manifold::hyperboloid(2);
  const Manifold s = Manifold::spd(2);
  const Manifold p = Manifold::product({h, s});
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Point x = random_point(p, rng, 3.0);
    const Point y = random_point(p, rng, 3.0);
    const double d0 = h.dist(p.factor_point(x, 0), p.factor_point(y, 0));
    const double d1 = s.dist(p.factor_point(x, 1), p.factor_point(y, 1));
    CHECK(p.dist(x, y) == doctest::Approx(std::hypot(d0, d1)).epsilon(1e-12));
    const TangentVector v = p.log(x, y);
    CHECK(norm(p.factor_tangent(v, 0) - h.log(p.factor_point(x, 0), p.factor_point(y, 0))) < 1e-12);
  }
}

TEST_CASE("comparison triangle: flat equality and nonpositive curvature inequality") {
  const Manifold e = Manifold::euclidean(3);
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto r = comparison_triangle(random_point(e, rng), random_point(e, rng), random_point(e, rng));
    for (double res : r.cosine_law_residuals) CHECK(std::abs(res) < 1e-12);
  }
  for (const Manifold& m : {Manifold::hyperboloid(2), Manifold::spd(2)}) {
    for (int i = 0; i < 100; ++i) {
      const auto s = law_of_cosines_slacks(random_point(m, rng, 3.0), random_point(m, rng, 3.0),
                                           random_point(m, rng, 3.0));
      for (double v : s) CHECK(v >= -1e-9);
    }
  }
}

TEST_CASE("hyperbolic triangles are strictly thinner than flat ones") {
  // Right isoceles triangle at the origin with legs of length 2.
  const Manifold h = Manifold::hyperboloid(2);
  const Point o = h.origin();
  const Point p = h.exp(o, h.tangent(o, {0, 2, 0}));
  const Point q = h.exp(o, h.tangent(o, {0, 0, 2}));
  // Hyperbolic Pythagoras: cosh c = cosh a cosh b.
  CHECK(h.dist(p, q) == doctest::Approx(std::acosh(std::cosh(2.0) * std::cosh(2.0))).epsilon(1e-12));
  CHECK(h.dist(p, q) > std::sqrt(8.0));
}

TEST_CASE("distance along geodesic pairs is convex") {
  const std::vector<double> grid = unit_grid(21);
  for (const Manifold& m : {Manifold::hyperboloid(3), Manifold::spd(2)}) {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
      const double s = distance_convexity_slack(random_point(m, rng), random_point(m, rng), random_point(m, rng),
                                                random_point(m, rng), grid);
      CHECK(s >= -1e-9);
    }
  }
}

TEST_CASE("invalid points and mismatched manifolds are rejected") {
  const Manifold h = Manifold::hyperboloid(2);
  CHECK_THROWS_AS(h.point({0.0, 1.0, 0.0}), Error);
  const Manifold s = Manifold::spd(2);
  CHECK_THROWS_AS(s.point({1.0, 0.0, 0.0, -1.0}), Error);
  CHECK_THROWS(Manifold::product({Manifold::euclidean(1)}));
  const Manifold e = Manifold::euclidean(3);
  CHECK_THROWS(e.dist(e.origin(), h.origin()));
}

TEST_CASE("serialization round trips exactly") {
  const Manifold p = Manifold::product({Manifold::hyperboloid(2), Manifold::spd(2)});
  Rng rng(1);
  const Point x = random_point(p, rng, 2.0);
  const Point y = parse_point(serialize_point(x));
  CHECK(y.manifold() == p);
  CHECK(y.coords() == x.coords());
  CHECK(parse_manifold_tag(p.tag()) == p);
}
