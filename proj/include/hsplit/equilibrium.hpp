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
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hsplit/convex_function.hpp"
#include "hsplit/fields.hpp"
#include "hsplit/manifold.hpp"
#include "hsplit/sampling.hpp"

namespace hsplit {

/// F(x,y) = g(y) - g(x).
struct ConvexDifference {
  std::shared_ptr<const ConvexFunction> function;
  std::shared_ptr<const VectorField> subdifferential;
};
/// F(x,y) = <V(x), log_x y> for a single-valued monotone V.
struct FieldInduced {
  std::shared_ptr<const VectorField> field;
};
/// Only the evaluator (and optionally a y-gradient) is known.
struct GenericSampled {};
struct ZeroBifunction {};

using BifunctionStructure = std::variant<ConvexDifference, FieldInduced, GenericSampled, ZeroBifunction>;

/// Equilibrium bifunction F: M x M -> R with F(x,x) = 0.
class Bifunction {
 public:
  using Evaluator = std::function<double(const Point&, const Point&)>;
  /// Riemannian gradient of y -> F(x, y), evaluated at y.
  using PartialGradient = std::function<TangentVector(const Point& x, const Point& y)>;

  Bifunction(std::string name, Manifold manifold, Evaluator evaluator, BifunctionStructure structure,
             PartialGradient partial_gradient = {});

  const std::string& name() const { return name_; }
  const Manifold& manifold() const { return manifold_; }
  const BifunctionStructure& structure() const { return structure_; }
  const PartialGradient& partial_gradient() const { return partial_gradient_; }

  /// Finite value of F(x, y); throws DomainError otherwise.
  double operator()(const Point& x, const Point& y) const;

  /// Registered points of EP(F), when known.
  const std::vector<Point>& known_equilibria() const { return equilibria_; }
  /// Extra points always included when certifying a resolvent output.
  const std::vector<Point>& anchors() const { return anchors_; }
  Bifunction& with_equilibria(std::vector<Point> pts);
  Bifunction& with_anchors(std::vector<Point> pts);

 private:
  std::string name_;
  Manifold manifold_;
  Evaluator evaluator_;
  BifunctionStructure structure_;
  PartialGradient partial_gradient_;
  std::vector<Point> equilibria_;
  std::vector<Point> anchors_;
};

Bifunction convex_difference(ConvexFunction g);
Bifunction field_induced(VectorField v);
Bifunction zero_bifunction(const Manifold& m);
Bifunction generic_bifunction(std::string name, Manifold m, Bifunction::Evaluator f,
                              Bifunction::PartialGradient partial_gradient = {});

inline double eval(const Bifunction& f, const Point& x, const Point& y) { return f(x, y); }

struct EquilibriumResolventConfig {
  double r = 1.0;
  double inner_tol = 1e-10;
  int inner_max_iter = 500;
  /// Damping handed to the field resolvent for structured bifunctions.
  double damping = 0.5;
  /// Geodesic gradient descent used by the generic best-response solver.
  double gd_step = 0.1;
  int gd_steps = 200;

  void validate() const;
};

struct EquilibriumResolventResult {
  Point point;
  /// Equation residual for structured tags; last best-response move otherwise.
  double residual;
  int iterations;
  bool structural;
};

/// T^F_r(x): the unique z with F(z,y) - (1/r) <log_z x, log_z y> >= 0 for all y.
///
/// ConvexDifference reduces to the proximal point of g (the resolvent of its
/// subdifferential with lambda = r), FieldInduced to log_z x = r V(z).
/// GenericSampled runs the best-response iteration
///   w <- argmin_y { r F(w, y) + d^2(y, x) / 2 }
/// with the inner argmin by geodesic gradient descent warm-started at w.
EquilibriumResolventResult resolvent_T(const Bifunction& f, const EquilibriumResolventConfig& cfg, const Point& x);

struct ViCertificate {
  /// min over probes y of F(z,y) - (1/r) <log_z x, log_z y>.
  double min_value;
  std::size_t probes;
};

/// Sampled certificate of the resolvent inequality at z: `directions` random
/// probes at distance `radius` from z plus the bifunction's anchors.
ViCertificate certify_resolvent_T(const Bifunction& f, double r, const Point& x, const Point& z, Rng& rng,
                                  int directions = 64, double radius = 0.1);

/// d(T^F_r(x), x): zero exactly on EP(F).
double equilibrium_residual(const Bifunction& f, const Point& x, const EquilibriumResolventConfig& cfg = {});

struct AssumptionReport {
  /// (A1): min F(x,x), must be >= -1e-12.
  double a1_min = 0.0;
  /// (A2): max F(x,y) + F(y,x), must be <= 1e-9.
  double a2_max = -std::numeric_limits<double>::infinity();
  /// (A4): min convexity slack of y -> F(x,y) on geodesic grids, >= -1e-9.
  double a4_min = std::numeric_limits<double>::infinity();
  bool a1 = true;
  bool a2 = true;
  bool a4 = true;
  /// Semicontinuity and coercivity cannot be falsified by finite sampling.
  std::vector<std::string> declared_only{"A3", "A5", "A6"};

  bool pass() const { return a1 && a2 && a4; }
};

/// Checks (A1), (A2) on consecutive sample pairs and (A4) on consecutive
/// triples (x, y1, y2) along the geodesic [y1, y2].
AssumptionReport check_assumptions(const Bifunction& f, std::span<const Point> samples, int grid_points = 21);

}  // namespace hsplit
