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

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsplit/equilibrium.hpp"
#include "hsplit/fields.hpp"
#include "hsplit/manifold.hpp"
#include "hsplit/schedule.hpp"

namespace hsplit {

/// Find x in EP(F) and A^{-1}(0). A missing field acts as A = 0 (identity
/// resolvent), a missing bifunction as F = 0.
struct ProblemInstance {
  std::string id;
  Manifold manifold;
  std::optional<VectorField> field;
  std::optional<Bifunction> bifunction;
  /// A known point of the common solution set.
  std::optional<Point> reference;
  Point x0;
  std::string description;
  std::string provenance;

  /// Throws InvalidArgument unless a field or bifunction is present, all
  /// parts share the manifold, and the reference passes omega_membership_residual <= 1e-6.
  void validate() const;
};

/// max(distance from 0 to A(p), d(T^F_1(p), p)) over the parts present.
double omega_membership_residual(const ProblemInstance& p, const Point& candidate);

enum class Algorithm {
  /// y = geodesic(x, J^A(x), alpha), z = T^F(y), x+ = geodesic(x, z, beta).
  Combined = 1,
  /// x+ = geodesic(x, J^A(x), alpha).
  InclusionOnly = 2,
  /// z = T^F(x), x+ = geodesic(x, z, beta).
  EquilibriumOnly = 3,
};

/// Inner-solver settings shared by both resolvents.
struct InnerSolverOptions {
  double inner_tol = 1e-10;
  int inner_max_iter = 500;
  double damping = 0.5;
  /// Inner tolerance is capped at budget_factor * d(x_n, x_{n-1}) ...
  double budget_factor = 1e-2;
  /// ... but never below this floor.
  double tol_floor = 1e-12;
  bool adaptive = true;

  double tolerance_for(double previous_step) const;
};

struct StepResult {
  /// u_n = J^A_{lambda_n}(x_n).
  Point u;
  Point y;
  Point z;
  Point next;
  double res_a = 0.0;
  double res_f = 0.0;
  int iters_a = 0;
  int iters_f = 0;
};

StepResult algorithm1_step(const ProblemInstance& p, const StepSchedule& s, long n, const Point& xn,
                           const InnerSolverOptions& inner = {}, double tol = 1e-10);
/// Trace convention: y = z = u on the geodesic, next = x_{n+1}.
StepResult algorithm2_step(const ProblemInstance& p, const StepSchedule& s, long n, const Point& xn,
                           const InnerSolverOptions& inner = {}, double tol = 1e-10);
/// Trace convention: u = y = x_n.
StepResult algorithm3_step(const ProblemInstance& p, const StepSchedule& s, long n, const Point& xn,
                           const InnerSolverOptions& inner = {}, double tol = 1e-10);

struct StoppingRule {
  long max_iter = 10000;
  /// Stop once d(x_{n+1}, x_n) <= step_tol.
  std::optional<double> step_tol = 1e-9;
  /// Stop once d(x_n, reference) <= ref_tol.
  std::optional<double> ref_tol;
};

enum class Termination { StepTolerance, ReferenceTolerance, MaxIterations, ResolventFailure, ScheduleViolation };

std::string to_string(Termination t);
std::string to_string(Algorithm a);

struct IterationRecord {
  IterationRecord(long n_, Point x_) : n(n_), x(std::move(x_)) {}

  long n = 0;
  Point x;
  /// Absent on the terminal record (no step taken from x_n).
  std::optional<StepResult> step;
  double alpha = 0.0, beta = 0.0, lambda = 0.0, r = 0.0;
  double dx_step = std::numeric_limits<double>::quiet_NaN();
  double dx_y = std::numeric_limits<double>::quiet_NaN();
  double dx_z = std::numeric_limits<double>::quiet_NaN();
  double dx_u = std::numeric_limits<double>::quiet_NaN();
  double dx_ref = std::numeric_limits<double>::quiet_NaN();
  double res_a = std::numeric_limits<double>::quiet_NaN();
  double res_f = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
};

struct IterationTrace {
  std::string problem_id;
  Algorithm algorithm = Algorithm::Combined;
  std::vector<IterationRecord> records;
  Termination termination = Termination::MaxIterations;
  std::string message;

  const Point& final_point() const { return records.back().x; }
  /// Number of steps taken.
  long steps() const;
};

struct RunOptions {
  Algorithm algorithm = Algorithm::Combined;
  InnerSolverOptions inner;
  /// Wall time per step is nondeterministic and therefore opt-in.
  bool record_wall_time = false;
};

/// Picks Combined, InclusionOnly or EquilibriumOnly from the parts present.
Algorithm natural_algorithm(const ProblemInstance& p);

/// Validates the schedule up to stop.max_iter (throws ScheduleViolation
/// before any iteration) and iterates until the stopping rule fires.
/// Resolvent failures end the run with a partial trace.
IterationTrace run(const ProblemInstance& p, const StepSchedule& s, const StoppingRule& stop,
                   const RunOptions& options = {});

struct FejerReport {
  bool refused = false;
  double membership_residual = 0.0;
  bool pass = false;
  /// max_n d(x_{n+1}, ref) - d(x_n, ref).
  double max_violation = -std::numeric_limits<double>::infinity();
  /// max_n d^2(y_n, ref) - d^2(x_n, ref) + alpha_n d^2(x_n, u_n).
  double composite_max_violation = -std::numeric_limits<double>::infinity();
  bool composite_pass = false;
  std::vector<double> ref_distances;
  std::vector<double> step_distances;
  std::vector<double> y_gaps;
  double final_step = 0.0;
  double final_y_gap = 0.0;
  /// max of the second half of the step sequence over the max of the first half.
  double step_tail_ratio = 0.0;
};

/// Fejer monotonicity of the trace towards `ref`, the composite descent
/// inequality, and the vanishing step / y-gap sequences. Refused (no
/// verdict) when ref's membership residual exceeds membership_tol.
FejerReport fejer_diagnostics(const IterationTrace& trace, const ProblemInstance& p, const Point& ref,
                              double slack = 1e-9, double composite_slack = 1e-8, double membership_tol = 1e-6);

}  // namespace hsplit
