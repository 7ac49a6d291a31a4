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

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hsplit/convex_function.hpp"
#include "hsplit/manifold.hpp"

namespace hsplit {

enum class Arity { SingleValued, Multivalued };

struct GenericField {};
struct SubdifferentialField {
  std::shared_ptr<const ConvexFunction> function;
};
/// Gradient of (weight/2) d^2(., anchor).
struct DistanceGradientField {
  Point anchor;
  double weight;
};
/// x -> Q x on a Euclidean space.
struct LinearField {
  Eigen::MatrixXd matrix;
};
struct SaddleFieldTag {
  std::string name;
};
struct ZeroField {};

using FieldStructure =
    std::variant<GenericField, SubdifferentialField, DistanceGradientField, LinearField, SaddleFieldTag, ZeroField>;

/// A multivalued vector field A with A(x) a subset of T_x M.
///
/// The evaluator returns finitely many generators of A(x) (empty outside the
/// domain). Set-valued quantities such as the membership residual of 0 and
/// resolvent residuals are taken over the convex hull of the generators.
class VectorField {
 public:
  using Evaluator = std::function<std::vector<TangentVector>(const Point&)>;
  using Membership = std::function<bool(const Point&, const TangentVector&)>;
  /// (x, lambda) -> J^A_lambda(x) in closed form.
  using ClosedFormResolvent = std::function<Point(const Point&, double)>;

  VectorField(std::string name, Manifold manifold, Arity arity, Evaluator evaluator,
              FieldStructure structure = GenericField{});

  const std::string& name() const { return name_; }
  const Manifold& manifold() const { return manifold_; }
  Arity arity() const { return arity_; }
  const FieldStructure& structure() const { return structure_; }

  /// Validated evaluation: every generator is finite and based at x.
  std::vector<TangentVector> evaluate(const Point& x) const;
  /// Full membership oracle when registered, else convex-hull membership
  /// of the generators within 1e-12.
  bool contains(const Point& x, const TangentVector& v) const;

  /// Points known to satisfy 0 in A(z).
  const std::vector<Point>& known_zeros() const { return zeros_; }
  VectorField& with_zeros(std::vector<Point> zeros);
  VectorField& with_membership(Membership m);
  /// Takes precedence over the structural closed forms in `resolvent`.
  VectorField& with_resolvent(ClosedFormResolvent r);
  const ClosedFormResolvent& closed_form_resolvent() const { return resolvent_; }

 private:
  std::string name_;
  Manifold manifold_;
  Arity arity_;
  Evaluator evaluator_;
  FieldStructure structure_;
  Membership membership_;
  ClosedFormResolvent resolvent_;
  std::vector<Point> zeros_;
};

VectorField linear_field(Eigen::MatrixXd q);
VectorField distance_gradient_field(const Point& anchor, double weight = 1.0);
VectorField subdifferential_of(ConvexFunction g);
VectorField zero_field(const Manifold& m);
/// x -> -x on R^n; a deliberately non-monotone negative control.
VectorField anti_monotone_field(int dim);

/// Element of conv(vs) nearest to `target` in the metric at the common base.
TangentVector nearest_in_hull(std::span<const TangentVector> vs, const TangentVector& target);
/// Minimum-norm element of conv(vs); the selection used by the inner solver.
TangentVector min_norm_element(std::span<const TangentVector> vs);
/// Distance from 0 to conv(A(x)); 0 iff x is (numerically) a zero of A.
double zero_residual(const VectorField& a, const Point& x);

// ---------------------------------------------------------------------------
// Resolvents J^A_lambda(x) = { z : x in exp_z(lambda A(z)) }.

struct ResolventConfig {
  double lambda = 1.0;
  double inner_tol = 1e-10;
  int inner_max_iter = 500;
  double damping = 0.5;

  void validate() const;
};

struct ResolventResult {
  Point point;
  /// min over a in conv A(z) of |log_z x - lambda a|.
  double residual;
  int iterations;
  bool closed_form;
};

/// Closed forms for zero, linear, distance-gradient and prox-carrying
/// subdifferential fields; otherwise the damped fixed-point iteration
///   z <- exp_z(theta (log_z x - lambda a(z)))
/// with a(z) the minimum-norm generator hull element and theta halved
/// whenever the residual fails to decrease.
ResolventResult resolvent(const VectorField& a, const ResolventConfig& cfg, const Point& x,
                          const std::optional<Point>& initial_guess = std::nullopt);

/// Residual of the resolvent equation at a candidate z.
double resolvent_residual(const VectorField& a, double lambda, const Point& x, const Point& z);

// ---------------------------------------------------------------------------
// Property checks

struct MonotonicityWitness {
  Point x;
  Point y;
  TangentVector u;
  TangentVector v;
  double slack;
};

struct MonotonicityReport {
  bool pass = true;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t pairs_checked = 0;
  /// Pair attaining min_slack.
  std::optional<MonotonicityWitness> witness;
};

/// slack = <v, -log_y x> - <u, log_x y> over all generators u of A(x), v of A(y).
MonotonicityReport check_monotone(const VectorField& a, std::span<const std::pair<Point, Point>> pairs,
                                  double tol = 1e-9);

using PointMap = std::function<Point(const Point&)>;

struct FirmNonexpansiveReport {
  bool pass = true;
  bool nonexpansive = true;
  std::vector<double> phi;
  /// max_k phi(t_{k+1}) - phi(t_k).
  double max_increase = -std::numeric_limits<double>::infinity();
};

/// Phi(t) = d(exp_x t log_x Tx, exp_y t log_y Ty) must be nonincreasing on `grid`.
FirmNonexpansiveReport check_firmly_nonexpansive(const PointMap& t, const Point& x, const Point& y,
                                                 std::span<const double> grid, double tol = 1e-9);

/// <log_{Ty} p, log_{Ty} y> for a fixed point p of T; nonpositive when T is
/// firmly nonexpansive. Throws PreconditionError when d(Tp, p) > fixed_tol.
double firmly_nonexpansive_inequality(const PointMap& t, const Point& fixed_point, const Point& y,
                                      double fixed_tol = 1e-9);

struct ContinuityReport {
  std::vector<double> gaps;
  double final_gap = 0.0;
  bool pass = true;
};

/// Gaps d(J_{lambda_n}(x_n), J_lambda(x)) along explicit convergent sequences.
ContinuityReport resolvent_continuity_probe(const VectorField& a, const ResolventConfig& cfg,
                                            std::span<const double> lambdas, std::span<const Point> xs,
                                            double lambda_limit, const Point& x_limit, double tol = 1e-6);

}  // namespace hsplit
