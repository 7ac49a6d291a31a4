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
#include <sstream>

#include "hsplit/convex_function.hpp"
#include "hsplit/errors.hpp"
#include "hsplit/problems.hpp"
#include "hsplit/schedule.hpp"
#include "hsplit/splitting.hpp"
#include "hsplit/trace_io.hpp"

using namespace hsplit;

namespace {

StoppingRule iterations(long n) {
  StoppingRule s;
  s.max_iter = n;
  s.step_tol.reset();
  return s;
}

std::string csv_of(const IterationTrace& t) {
  std::ostringstream os;
  write_trace_csv(t, os);
  return os.str();
}

}  // namespace

TEST_CASE("schedule validation") {
  ScheduleBounds b{0.1, 0.9, 0.5, 2.0, 0.5, 0};
  CHECK(validate_schedule(StepSchedule::constant(0.5, 0.5, 1.0, 1.0, b), 1000).pass);

  StepSchedule harmonic = StepSchedule::constant(0.5, 0.5, 1.0, 1.0, b);
  harmonic.alpha = Sequence::harmonic(1.0);
  const ScheduleReport r = validate_schedule(harmonic, 100);
  CHECK_FALSE(r.pass);
  REQUIRE(r.first.has_value());
  // 1/(n+1) starts at 1 > b, so the upper bound trips first at n = 0.
  CHECK(r.first->index == 0);
  CHECK(r.first_violation("alpha", "lower") == 10);

  StepSchedule alt = StepSchedule::defaults();
  alt.bounds.r_min = 0.4;
  alt.r = Sequence::alternating(1.0, 0.5);
  const ScheduleReport ra = validate_schedule(alt, 1000);
  CHECK(ra.pass);
  CHECK(ra.r_tail_min == doctest::Approx(0.5));

  const StepSchedule d = StepSchedule::defaults();
  CHECK(d.alpha(7) == 0.5);
  CHECK(d.beta(7) == 0.5);
  CHECK(d.lambda(7) == 1.0);
  CHECK(d.r(7) == 1.0);
  CHECK(d.bounds.a == 0.01);
  CHECK(d.bounds.b == 0.99);
  CHECK(d.bounds.lambda_min == 0.01);
  CHECK(d.bounds.lambda_max == 100.0);
  CHECK(d.bounds.r_min == 0.01);
}

TEST_CASE("sequence parsing") {
  CHECK(Sequence::parse("0.25")(3) == 0.25);
  CHECK(Sequence::parse("const:0.3")(9) == 0.3);
  CHECK(Sequence::parse("alt:1,0.5")(1) == 0.5);
  CHECK(Sequence::parse("harmonic:2")(3) == 0.5);
  CHECK(Sequence::parse("relax:0.5,0.4")(1) == doctest::Approx(0.7));
  CHECK_THROWS(Sequence::parse("bogus:1"));
  CHECK_THROWS(Sequence::parse(""));
}

TEST_CASE("first combined step on the scalar example") {
  const ProblemInstance p = make_problem("euclid_quad");
  const StepResult s = algorithm1_step(p, StepSchedule::defaults(), 0, p.x0);
  CHECK(s.u[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s.y[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(s.z[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.next[0] == doctest::Approx(5.5).epsilon(1e-12));
}

TEST_CASE("reference point is fixed by every step") {
  for (const std::string& id : problem_ids()) {
    const ProblemInstance p = make_problem(id);
    if (!p.reference) continue;
    const Algorithm alg = natural_algorithm(p);
    const StepSchedule s = StepSchedule::defaults();
    const StepResult r = alg == Algorithm::Combined        ? algorithm1_step(p, s, 0, *p.reference)
                         : alg == Algorithm::InclusionOnly ? algorithm2_step(p, s, 0, *p.reference)
                                                           : algorithm3_step(p, s, 0, *p.reference);
    INFO(id);
    CHECK(p.manifold.dist(r.next, *p.reference) <= 1e-7);
    CHECK(p.manifold.dist(r.y, *p.reference) <= 1e-7);
    CHECK(p.manifold.dist(r.z, *p.reference) <= 1e-7);
  }
}

TEST_CASE("small alpha keeps y close to x") {
  const ProblemInstance p = make_problem("hyp_distance");
  StepSchedule s = StepSchedule::defaults();
  s.alpha = Sequence::constant(0.01);
  const StepResult r = algorithm1_step(p, s, 0, p.x0);
  CHECK(p.manifold.dist(p.x0, r.y) <= 0.01 * p.manifold.dist(p.x0, r.u) + 1e-12);
}

TEST_CASE("distance to the solution follows 8 * 0.6875^n") {
  const ProblemInstance p = make_problem("euclid_quad");
  const IterationTrace t = run(p, StepSchedule::defaults(), iterations(5));
  REQUIRE(t.records.size() == 6);
  for (long n = 0; n <= 5; ++n) CHECK(std::abs(t.records[n].dx_ref - 8.0 * std::pow(0.6875, n)) <= 1e-9);
}

TEST_CASE("scalar example converges to zero with strictly decreasing distance") {
  const ProblemInstance p = make_problem("euclid_quad");
  StoppingRule stop;
  stop.step_tol = 1e-10;
  const IterationTrace t = run(p, StepSchedule::defaults(), stop);
  CHECK(t.termination == Termination::StepTolerance);
  CHECK(std::abs(t.final_point()[0]) <= 1e-9);
  for (std::size_t i = 1; i < t.records.size(); ++i) CHECK(t.records[i].dx_ref < t.records[i - 1].dx_ref);
}

TEST_CASE("inclusion-only step is the relaxed proximal point step") {
  const ProblemInstance p = make_problem("euclid_quad");
  const StepResult r = algorithm2_step(p, StepSchedule::defaults(), 0, p.x0);
  CHECK(r.next[0] == doctest::Approx(6.0).epsilon(1e-12));

  // Matrix oracle: x+ = x + alpha ((I + lambda Q)^-1 x - x).
  const ProblemInstance q = make_problem("euclid_linear3");
  Eigen::Matrix3d mat;
  mat << 2, 1, 0, -1, 1, 0, 0, 0, 0;
  StepSchedule s = StepSchedule::defaults();
  s.alpha = Sequence::relaxing(0.5, 0.3);
  s.lambda = Sequence::alternating(1.0, 0.5);
  RunOptions o;
  o.algorithm = Algorithm::InclusionOnly;
  const IterationTrace t = run(q, s, iterations(50), o);
  Eigen::Vector3d x = q.x0.coords();
  for (long n = 0; n <= 50; ++n) {
    CHECK((t.records[n].x.coords() - x).norm() <= 1e-10);
    const Eigen::Vector3d u = (Eigen::Matrix3d::Identity() + s.lambda(n) * mat).colPivHouseholderQr().solve(x);
    x = x + s.alpha(n) * (u - x);
  }
}

TEST_CASE("combined step with the zero bifunction interpolates twice") {
  ProblemInstance p = make_problem("euclid_quad");
  p.bifunction = zero_bifunction(p.manifold);
  p.reference.reset();
  StepSchedule s = StepSchedule::constant(0.3, 0.6, 1.0, 1.0);
  const StepResult a = algorithm1_step(p, s, 0, p.x0);
  CHECK(a.z[0] == doctest::Approx(a.y[0]).epsilon(1e-14));
  StepSchedule s2 = StepSchedule::constant(0.3 * 0.6, 0.5, 1.0, 1.0);
  const StepResult b = algorithm2_step(p, s2, 0, p.x0);
  CHECK(std::abs(a.next[0] - b.next[0]) <= 1e-12);
}

TEST_CASE("equilibrium-only step on the scalar quadratic") {
  const Manifold e = Manifold::euclidean(1);
  ProblemInstance p{"eq", e, std::nullopt, convex_difference(half_squared_distance(e.point({0.0}))), e.point({0.0}),
                    e.point({4.0}), "", ""};
  const StepResult r = algorithm3_step(p, StepSchedule::defaults(), 0, p.x0);
  CHECK(r.z[0] == doctest::Approx(2.0));
  CHECK(r.next[0] == doctest::Approx(3.0));
  CHECK(r.y[0] == 4.0);
}

TEST_CASE("run with zero iterations keeps only the start") {
  const ProblemInstance p = make_problem("euclid_quad");
  const IterationTrace t = run(p, StepSchedule::defaults(), iterations(0));
  CHECK(t.records.size() == 1);
  CHECK(t.termination == Termination::MaxIterations);
  CHECK(t.steps() == 0);
}

TEST_CASE("invalid schedules are rejected before iterating") {
  const ProblemInstance p = make_problem("euclid_quad");
  StepSchedule s = StepSchedule::defaults();
  s.beta = Sequence::constant(1.0);
  CHECK_THROWS_AS(run(p, s, StoppingRule{}), ScheduleViolation);
}

TEST_CASE("problem validation") {
  const Manifold e = Manifold::euclidean(1);
  ProblemInstance none{"none", e, std::nullopt, std::nullopt, std::nullopt, e.point({0.0}), "", ""};
  CHECK_THROWS(none.validate());
  ProblemInstance wrong = make_problem("euclid_quad");
  wrong.reference = e.point({3.0});
  CHECK_THROWS(wrong.validate());
}

TEST_CASE("Fejer diagnostics on the hyperbolic problem") {
  const ProblemInstance p = make_problem("hyp_distance");
  const IterationTrace t = run(p, StepSchedule::defaults(), StoppingRule{});
  const FejerReport r = fejer_diagnostics(t, p, *p.reference);
  CHECK(r.pass);
  CHECK(r.composite_pass);
  CHECK(r.final_step <= 1e-6);
  CHECK(r.final_y_gap <= 1e-6);
  CHECK(r.ref_distances.back() <= 1e-5);

  const FejerReport refused = fejer_diagnostics(t, p, p.x0);
  CHECK(refused.refused);
  CHECK(refused.membership_residual > 1e-6);
}

TEST_CASE("trace at the reference is constant") {
  ProblemInstance p = make_problem("hyp_distance");
  p.x0 = *p.reference;
  const IterationTrace t = run(p, StepSchedule::defaults(), iterations(5));
  const FejerReport r = fejer_diagnostics(t, p, *p.reference);
  CHECK(r.pass);
  for (double d : r.ref_distances) CHECK(d <= 1e-12);
}

TEST_CASE("runs are deterministic") {
  const ProblemInstance p = make_problem("spd_karcher2");
  const IterationTrace a = run(p, StepSchedule::defaults(), StoppingRule{});
  const IterationTrace b = run(make_problem("spd_karcher2"), StepSchedule::defaults(), StoppingRule{});
  CHECK(csv_of(a) == csv_of(b));
}

TEST_CASE("trace CSV layout") {
  const ProblemInstance p = make_problem("euclid_quad");
  const IterationTrace t = run(p, StepSchedule::defaults(), iterations(3));
  std::istringstream is(csv_of(t));
  std::string line;
  std::getline(is, line);
  CHECK(line == kTraceHeader);
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(0.5) == "0.5");
}
