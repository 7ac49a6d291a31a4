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
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsplit/convex_function.hpp"
#include "hsplit/equilibrium.hpp"
#include "hsplit/fields.hpp"
#include "hsplit/sampling.hpp"
#include "hsplit/splitting.hpp"

namespace hsplit {

/// min_x g(x) over the whole manifold.
struct ConvexProgram {
  explicit ConvexProgram(ConvexFunction g) : objective(std::make_shared<const ConvexFunction>(std::move(g))) {}

  std::shared_ptr<const ConvexFunction> objective;

  const Manifold& manifold() const { return objective->manifold; }
  const std::vector<Point>& known_minimizers() const { return objective->minimizers; }
};

struct ProgramCheck {
  bool pass = true;
  /// min over sampled geodesics of the convexity slack.
  double convexity_min = std::numeric_limits<double>::infinity();
  /// min over (x, y, s) of g(y) - g(x) - <s, log_x y>.
  double subgradient_min = std::numeric_limits<double>::infinity();
  std::optional<std::pair<Point, Point>> witness;
};

/// Spot checks geodesic convexity and the subgradient inequality on
/// `pairs` random pairs drawn within `radius` of the first minimizer (or origin).
ProgramCheck check_program(const ConvexProgram& prog, Rng& rng, int pairs = 100, double radius = 2.0,
                           double tol = 1e-9);

/// The multivalued field x -> generators of the subdifferential at x.
/// Throws RegistrationRefused with the witness pair when a fixed-seed
/// check_program fails.
VectorField subdifferential_field(const ConvexProgram& prog);

/// Runs the splitting scheme with A = subdifferential_field(prog) and the
/// optional bifunction F. The reference is the first registered common
/// minimizer that is also an equilibrium of F.
IterationTrace solve_minimization(const ConvexProgram& prog, const std::optional<Bifunction>& f, const Point& x0,
                                  const StepSchedule& s, const StoppingRule& stop, const RunOptions& options = {});

/// The common-solution problem solved by solve_minimization.
ProblemInstance minimization_problem(const ConvexProgram& prog, const std::optional<Bifunction>& f, const Point& x0,
                                     std::string id = "minimization");

/// min over y in M2, max over x in M1 of H(x, y): H(x, .) geodesically convex
/// and H(., y) geodesically concave. A saddle (x~, y~) satisfies
/// H(x, y~) <= H(x~, y~) <= H(x~, y).
struct SaddleProblem {
  using Objective = std::function<double(const Point& x, const Point& y)>;
  /// Generators of a subdifferential of a partial function; tangent at the
  /// varying argument.
  using PartialSubgradients = std::function<std::vector<TangentVector>(const Point& x, const Point& y)>;

  std::string name;
  Manifold m1;
  Manifold m2;
  Objective h;
  /// Subgradients of -H(., y) at x.
  PartialSubgradients concave_side;
  /// Subgradients of H(x, .) at y.
  PartialSubgradients convex_side;
  std::optional<std::pair<Point, Point>> known_saddle;
  /// Optional closed-form resolvent of V_H on the product manifold.
  VectorField::ClosedFormResolvent resolvent;

  Manifold product() const { return Manifold::product({m1, m2}); }
};

struct SaddleCheck {
  bool pass = true;
  /// min convexity slack of y -> H(x, y).
  double convex_min = std::numeric_limits<double>::infinity();
  /// min convexity slack of x -> -H(x, y).
  double concave_min = std::numeric_limits<double>::infinity();
};

SaddleCheck check_saddle_problem(const SaddleProblem& sp, Rng& rng, int probes = 100, double radius = 2.0,
                                 double tol = 1e-9);

/// V_H(x, y) = subdiff(-H(., y))(x) x subdiff(H(x, .))(y) on M1 x M2; every
/// pair of factor generators gives one product generator. Throws
/// RegistrationRefused when a fixed-seed check_saddle_problem fails.
VectorField saddle_field(const SaddleProblem& sp);

ProblemInstance saddle_problem_instance(const SaddleProblem& sp, const std::optional<Bifunction>& f, const Point& x0,
                                        std::string id = "saddle");

IterationTrace solve_saddle(const SaddleProblem& sp, const std::optional<Bifunction>& f, const Point& x0,
                            const StepSchedule& s, const StoppingRule& stop, const RunOptions& options = {});

struct SaddleVerification {
  bool pass = true;
  /// max over probes x of H(x, y~) - H(x~, y~).
  double left_max = -std::numeric_limits<double>::infinity();
  /// max over probes y of H(x~, y~) - H(x~, y).
  double right_max = -std::numeric_limits<double>::infinity();
  int probes = 0;
};

/// Post-hoc saddle inequalities at the product point `candidate` on
/// `probes` random x and y within `radius` of it.
SaddleVerification verify_saddle(const SaddleProblem& sp, const Point& candidate, Rng& rng, int probes = 100,
                                 double radius = 1.0, double slack = 1e-6);

/// H(x, y) = <x, y> on R^n x R^n; unique saddle (0, 0), V_H(x, y) = (-y, x).
SaddleProblem bilinear_saddle(int dim = 1);
/// H(x, y) = d^2(y, b)/2 - d^2(x, a)/2 on M1 x M2; unique saddle (a, b).
SaddleProblem distance_saddle(const Point& a, const Point& b);
/// H = 0; every point is a saddle.
SaddleProblem zero_saddle(const Manifold& m1, const Manifold& m2);

}  // namespace hsplit
