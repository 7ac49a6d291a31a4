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

#include <Eigen/Dense>
#include <cmath>

#include "hsplit/convex_function.hpp"
#include "hsplit/errors.hpp"
#include "hsplit/fields.hpp"
#include "hsplit/sampling.hpp"

using namespace hsplit;

namespace {

// Same map as linear_field(q) but without the structural tag, so resolvents
// go through the inner solver.
VectorField generic_linear(const Eigen::MatrixXd& q) {
  const Manifold m = Manifold::euclidean(static_cast<int>(q.rows()));
  return VectorField("generic_linear", m, Arity::SingleValued, [m, q](const Point& x) {
    return std::vector<TangentVector>{m.tangent(x, q * x.coords())};
  });
}

std::vector<std::pair<Point, Point>> random_pairs(const Manifold& m, Rng& rng, int n, double radius) {
  std::vector<std::pair<Point, Point>> out;
  for (int i = 0; i < n; ++i) out.emplace_back(random_point(m, rng, radius), random_point(m, rng, radius));
  return out;
}

}  // namespace

TEST_CASE("identity field evaluation and resolvent") {
  const VectorField a = linear_field(Eigen::Matrix2d::Identity());
  const Manifold& m = a.manifold();
  const auto g = a.evaluate(m.point({1, 2}));
  REQUIRE(g.size() == 1);
  CHECK(g[0][0] == 1.0);
  CHECK(g[0][1] == 2.0);
  ResolventConfig cfg;
  cfg.lambda = 1.0;
  const ResolventResult r = resolvent(a, cfg, m.point({2, 4}));
  CHECK(r.point[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.point[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("norm subdifferential at the kink is the whole interval") {
  const VectorField a = subdifferential_of(euclidean_norm(1));
  const Manifold& m = a.manifold();
  const Point o = m.point({0.0});
  CHECK(a.contains(o, m.tangent(o, {1.0})));
  CHECK(a.contains(o, m.tangent(o, {-0.3})));
  CHECK_FALSE(a.contains(o, m.tangent(o, {1.2})));
  CHECK(zero_residual(a, o) < 1e-12);
  const Point one = m.point({1.0});
  CHECK(zero_residual(a, one) == doctest::Approx(1.0));
}

TEST_CASE("generic inner solver reproduces (I + lambda Q)^-1 x") {
  Eigen::MatrixXd q(3, 3);
  q << 2, 1, 0, 1, 2, 0, 0, 0, 0.5;
  const Eigen::Vector3d x(1.0, -2.0, 3.0);
  const VectorField generic = generic_linear(q);
  const VectorField tagged = linear_field(q);
  for (double lambda : {0.1, 1.0, 10.0}) {
    ResolventConfig cfg;
    cfg.lambda = lambda;
    cfg.inner_tol = 1e-13;
    cfg.inner_max_iter = 5000;
    const Eigen::VectorXd oracle = (Eigen::MatrixXd::Identity(3, 3) + lambda * q).colPivHouseholderQr().solve(x);
    const Point px = generic.manifold().point(x);
    INFO("lambda=" << lambda);
    CHECK((resolvent(generic, cfg, px).point.coords() - oracle).norm() <= 1e-8);
    CHECK((resolvent(tagged, cfg, px).point.coords() - oracle).norm() <= 1e-10);
  }
}

TEST_CASE("euclidean distance-gradient resolvent is a weighted average") {
  const Manifold e = Manifold::euclidean(2);
  const Point p = e.point({1.0, -1.0});
  const double w = 3.0;
  const VectorField a = distance_gradient_field(p, w);
  const Eigen::Vector2d x(4.0, 2.0);
  for (double lambda : {0.1, 1.0, 10.0}) {
    ResolventConfig cfg;
    cfg.lambda = lambda;
    const Eigen::Vector2d oracle = (x + lambda * w * p.coords()) / (1.0 + lambda * w);
    CHECK((resolvent(a, cfg, e.point(x)).point.coords() - oracle).norm() <= 1e-12);
  }
}

TEST_CASE("distance gradient matches finite differences of the half squared distance") {
  const Manifold h = Manifold::hyperboloid(2);
  Rng rng(8);
  const Point p = random_point(h, rng, 1.0);
  const VectorField a = distance_gradient_field(p, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Point x = random_point(h, rng, 2.0);
    const TangentVector g = a.evaluate(x).front();
    for (const TangentVector& e : h.tangent_basis(x)) {
      const double eps = 1e-5;
      const double fp = 0.5 * std::pow(h.dist(h.exp(x, eps * e), p), 2);
      const double fm = 0.5 * std::pow(h.dist(h.exp(x, -eps * e), p), 2);
      CHECK((fp - fm) / (2 * eps) == doctest::Approx(inner(g, e)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("monotonicity: identity passes, anti-monotone fails with a witness") {
  Rng rng(4);
  const VectorField id = linear_field(Eigen::Matrix2d::Identity());
  const auto pairs = random_pairs(id.manifold(), rng, 50, 2.0);
  const MonotonicityReport all = check_monotone(id, pairs);
  CHECK(all.pass);
  CHECK(all.min_slack >= 0.0);

  const VectorField anti = anti_monotone_field(1);
  const Manifold& m = anti.manifold();
  const std::vector<std::pair<Point, Point>> one{{m.point({0.0}), m.point({1.0})}};
  const MonotonicityReport bad = check_monotone(anti, one);
  CHECK_FALSE(bad.pass);
  CHECK(bad.min_slack == doctest::Approx(-1.0));
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->slack == doctest::Approx(-1.0));
}

TEST_CASE("half squared distance subdifferential is monotone on the hyperboloid") {
  Rng rng(14);
  const Manifold h = Manifold::hyperboloid(2);
  const VectorField a = subdifferential_of(half_squared_distance(random_point(h, rng, 1.0)));
  const MonotonicityReport r = check_monotone(a, random_pairs(h, rng, 200, 2.0));
  CHECK(r.pass);
  CHECK(r.min_slack >= -1e-9);
}

TEST_CASE("resolvent fixed points are zeros and the resolvent is firmly nonexpansive") {
  Rng rng(2);
  const Manifold h = Manifold::hyperboloid(2);
  const Point p = random_point(h, rng, 1.0);
  const VectorField a = distance_gradient_field(p, 2.0);
  const std::vector<double> grid = unit_grid(21);
  for (double lambda : {0.1, 1.0, 10.0}) {
    ResolventConfig cfg;
    cfg.lambda = lambda;
    CHECK(h.dist(resolvent(a, cfg, p).point, p) <= 1e-8);
    const PointMap t = [&](const Point& x) { return resolvent(a, cfg, x).point; };
    for (const auto& [x, y] : random_pairs(h, rng, 20, 2.0)) {
      CHECK(check_firmly_nonexpansive(t, x, y, grid).pass);
      CHECK(firmly_nonexpansive_inequality(t, p, y) <= 1e-9);
    }
  }
}

TEST_CASE("translation has constant Phi and halving map has the expected inner product") {
  const Manifold e = Manifold::euclidean(2);
  const PointMap shift = [e](const Point& x) { return e.exp(x, e.tangent(x, {1.0, -2.0})); };
  const FirmNonexpansiveReport r =
      check_firmly_nonexpansive(shift, e.point({0, 0}), e.point({3, 1}), unit_grid(11));
  CHECK(r.pass);
  for (double v : r.phi) CHECK(v == doctest::Approx(r.phi.front()).epsilon(1e-12));

  const Manifold e1 = Manifold::euclidean(1);
  const PointMap half = [e1](const Point& x) { return e1.point({x[0] / 2}); };
  CHECK(firmly_nonexpansive_inequality(half, e1.point({0.0}), e1.point({2.0})) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(firmly_nonexpansive_inequality(half, e1.point({1.0}), e1.point({2.0})), PreconditionError);
}

TEST_CASE("resolvent depends continuously on lambda and x") {
  const VectorField a = linear_field(Eigen::Matrix2d::Identity());
  const Manifold& m = a.manifold();
  std::vector<double> lambdas;
  std::vector<Point> xs;
  for (int n = 1; n <= 100; ++n) {
    lambdas.push_back(1.0 + 1.0 / n);
    xs.push_back(m.point({1.0 + 1.0 / n, 2.0}));
  }
  const ContinuityReport r =
      resolvent_continuity_probe(a, ResolventConfig{}, lambdas, xs, 1.0, m.point({1.0, 2.0}), 1e-2);
  CHECK(r.pass);
  // Gaps decay like 1/n, so they match x_n / (1 + lambda_n) - x / 2 exactly.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Eigen::Vector2d oracle = xs[i].coords() / (1.0 + lambdas[i]) - Eigen::Vector2d(0.5, 1.0);
    CHECK(r.gaps[i] == doctest::Approx(oracle.norm()).epsilon(1e-12));
    if (i > 0) CHECK(r.gaps[i] < r.gaps[i - 1]);
  }
}

TEST_CASE("invalid lambda is rejected") {
  ResolventConfig cfg;
  cfg.lambda = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
