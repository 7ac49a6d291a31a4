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

#include "hsplit/apps.hpp"
#include "hsplit/errors.hpp"
#include "hsplit/problems.hpp"

using namespace hsplit;

namespace {

// Riemannian gradient descent on sum_i w_i d^2(., a_i) / 2 with unit step,
// started at the first anchor.
Point frechet_by_descent(const std::vector<Point>& anchors, const std::vector<double>& w) {
  const Manifold& m = anchors.front().manifold();
  Point z = anchors.front();
  for (int i = 0; i < 100000; ++i) {
    TangentVector g = m.zero(z);
    for (std::size_t k = 0; k < anchors.size(); ++k) g = g + w[k] * m.log(z, anchors[k]);
    if (norm(g) < 1e-14) break;
    z = m.exp(z, 0.5 * g);
  }
  return z;
}

StoppingRule tight() {
  StoppingRule s;
  s.step_tol = 1e-12;
  return s;
}

}  // namespace

TEST_CASE("linear function has a constant subdifferential") {
  const ConvexProgram prog(linear_function(Eigen::Vector2d(1.0, -3.0)));
  const VectorField a = subdifferential_field(prog);
  const Point x = prog.manifold().point({5.0, 2.0});
  const auto g = a.evaluate(x);
  REQUIRE(g.size() == 1);
  CHECK(g[0][0] == 1.0);
  CHECK(g[0][1] == -3.0);
}

TEST_CASE("registration refuses a nonconvex objective") {
  const Manifold e = Manifold::euclidean(1);
  ConvexFunction g("neg_sq", e);
  g.value = [](const Point& x) { return -x[0] * x[0]; };
  g.subgradients = [e](const Point& x) { return std::vector<TangentVector>{e.tangent(x, {-2.0 * x[0]})}; };
  CHECK_THROWS_AS(subdifferential_field(ConvexProgram(g)), RegistrationRefused);
}

TEST_CASE("hyperbolic Frechet mean agrees with gradient descent") {
  const ProblemInstance p = make_problem("hyp_frechet");
  const std::vector<Point> anchors = hyperbolic_frechet_anchors();
  const std::vector<double> w(anchors.size(), 1.0 / static_cast<double>(anchors.size()));
  const Point oracle = frechet_by_descent(anchors, w);
  const IterationTrace t = run(p, StepSchedule::defaults(), tight());
  CHECK(p.manifold.dist(t.final_point(), oracle) <= 1e-5);
  CHECK(p.manifold.dist(*p.reference, oracle) <= 1e-10);
}

TEST_CASE("Karcher mean of commuting matrices is the geometric mean") {
  const ProblemInstance p = make_problem("spd_karcher2");
  const IterationTrace t = run(p, StepSchedule::defaults(), tight());
  const Eigen::Matrix2d x = Eigen::Map<const Eigen::Matrix2d>(t.final_point().coords().data());
  CHECK((x - 2.0 * Eigen::Matrix2d::Identity()).norm() <= 1e-6);
}

TEST_CASE("minimization through the inclusion-only path") {
  const Manifold e = Manifold::euclidean(2);
  const ConvexProgram prog(half_squared_distance(e.point({1.0, -2.0})));
  const IterationTrace t = solve_minimization(prog, std::nullopt, e.point({5.0, 5.0}), StepSchedule::defaults(), tight());
  CHECK(t.algorithm == Algorithm::InclusionOnly);
  CHECK(e.dist(t.final_point(), e.point({1.0, -2.0})) <= 1e-9);
}

TEST_CASE("bilinear saddle field and convergence") {
  const SaddleProblem sp = bilinear_saddle(1);
  const VectorField v = saddle_field(sp);
  const Manifold pm = sp.product();
  const Point xy = pm.point({2.0, 3.0});
  const auto g = v.evaluate(xy);
  REQUIRE(g.size() == 1);
  CHECK(g[0][0] == doctest::Approx(-3.0));
  CHECK(g[0][1] == doctest::Approx(2.0));
  const IterationTrace t = solve_saddle(sp, std::nullopt, pm.point({1.0, 1.0}), StepSchedule::defaults(), tight());
  CHECK(pm.dist(t.final_point(), pm.point({0.0, 0.0})) <= 1e-6);
  Rng rng(5);
  const SaddleVerification sv = verify_saddle(sp, t.final_point(), rng);
  CHECK(sv.pass);
}

TEST_CASE("saddle inequalities fail away from the saddle") {
  const SaddleProblem sp = bilinear_saddle(1);
  Rng rng(5);
  const SaddleVerification sv = verify_saddle(sp, sp.product().point({1.0, 1.0}), rng);
  CHECK_FALSE(sv.pass);
}

TEST_CASE("hyperbolic distance saddle converges to its anchors") {
  const ProblemInstance p = make_problem("saddle_hyperbolic");
  const IterationTrace t = run(p, StepSchedule::defaults(), tight());
  CHECK(p.manifold.dist(t.final_point(), *p.reference) <= 1e-5);
  const FejerReport r = fejer_diagnostics(t, p, *p.reference);
  CHECK(r.pass);
  CHECK(r.composite_pass);
}

TEST_CASE("product slack of the saddle field is additive") {
  const SaddleProblem sp = bilinear_saddle(2);
  const VectorField v = saddle_field(sp);
  const Manifold pm = sp.product();
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const Point a = random_point(pm, rng, 2.0);
    const Point b = random_point(pm, rng, 2.0);
    const TangentVector u = v.evaluate(a).front();
    const TangentVector w = v.evaluate(b).front();
    const double total = inner(w, -pm.log(b, a)) - inner(u, pm.log(a, b));
    double parts = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
      const Manifold& f = pm.factors()[k];
      const Point ak = pm.factor_point(a, k), bk = pm.factor_point(b, k);
      parts += f.inner(pm.factor_tangent(w, k), -f.log(bk, ak)) - f.inner(pm.factor_tangent(u, k), f.log(ak, bk));
    }
    CHECK(std::abs(total - parts) <= 1e-12);
    // The bilinear saddle field is skew, so the slack vanishes.
    CHECK(std::abs(total) <= 1e-12);
  }
}

TEST_CASE("problem library metadata") {
  const auto& ids = problem_ids();
  CHECK(ids.size() == list_problems().size());
  for (const ProblemInfo& info : list_problems()) {
    CHECK_FALSE(info.provenance.empty());
    CHECK_FALSE(info.description.empty());
  }
  CHECK_THROWS_AS(make_problem("nosuch"), UnknownId);
}
