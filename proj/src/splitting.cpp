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

#include "hsplit/splitting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "hsplit/errors.hpp"

namespace hsplit {

namespace {

constexpr double kReferenceMembershipTol = 1e-6;

struct FieldOutcome {
  Point point;
  double residual;
  int iterations;
};

FieldOutcome apply_field_resolvent(const ProblemInstance& p, double lambda, const Point& x,
                                   const InnerSolverOptions& inner, double tol) {
  if (!p.field) return {x, 0.0, 0};
  ResolventConfig cfg;
  cfg.lambda = lambda;
  cfg.inner_tol = tol;
  cfg.inner_max_iter = inner.inner_max_iter;
  cfg.damping = inner.damping;
  const ResolventResult res = resolvent(*p.field, cfg, x);
  return {res.point, res.residual, res.iterations};
}

FieldOutcome apply_equilibrium_resolvent(const ProblemInstance& p, double r, const Point& x,
                                         const InnerSolverOptions& inner, double tol) {
  if (!p.bifunction) return {x, 0.0, 0};
  EquilibriumResolventConfig cfg;
  cfg.r = r;
  cfg.inner_tol = tol;
  cfg.inner_max_iter = inner.inner_max_iter;
  cfg.damping = inner.damping;
  const EquilibriumResolventResult res = resolvent_T(*p.bifunction, cfg, x);
  return {res.point, res.residual, res.iterations};
}

}  // namespace

void ProblemInstance::validate() const {
  if (!field && !bifunction) throw InvalidArgument("problem '" + id + "' has neither a field nor a bifunction");
  if (x0.manifold() != manifold) throw ManifoldMismatch("problem '" + id + "': x0 lies on " + x0.manifold().tag());
  if (field && field->manifold() != manifold)
    throw ManifoldMismatch("problem '" + id + "': field lives on " + field->manifold().tag());
  if (bifunction && bifunction->manifold() != manifold)
    throw ManifoldMismatch("problem '" + id + "': bifunction lives on " + bifunction->manifold().tag());
  if (reference) {
    if (reference->manifold() != manifold)
      throw ManifoldMismatch("problem '" + id + "': reference lies on " + reference->manifold().tag());
    const double res = omega_membership_residual(*this, *reference);
    if (!(res <= kReferenceMembershipTol)) {
      std::ostringstream os;
      os << "problem '" << id << "': reference membership residual " << res << " exceeds "
         << kReferenceMembershipTol;
      throw InvalidArgument(os.str());
    }
  }
}

double omega_membership_residual(const ProblemInstance& p, const Point& candidate) {
  double res = 0.0;
  if (p.field) res = std::max(res, zero_residual(*p.field, candidate));
  if (p.bifunction) {
    EquilibriumResolventConfig cfg;
    cfg.inner_tol = 1e-12;
    cfg.inner_max_iter = 2000;
    res = std::max(res, equilibrium_residual(*p.bifunction, candidate, cfg));
  }
  return res;
}

double InnerSolverOptions::tolerance_for(double previous_step) const {
  if (!adaptive || !std::isfinite(previous_step)) return inner_tol;
  return std::max(tol_floor, std::min(inner_tol, budget_factor * previous_step));
}

StepResult algorithm1_step(const ProblemInstance& p, const StepSchedule& s, long n, const Point& xn,
                           const InnerSolverOptions& inner, double tol) {
  const FieldOutcome u = apply_field_resolvent(p, s.lambda(n), xn, inner, tol);
  Point y = geodesic_point(xn, u.point, s.alpha(n));
  const FieldOutcome z = apply_equilibrium_resolvent(p, s.r(n), y, inner, tol);
  Point next = geodesic_point(xn, z.point, s.beta(n));
  return StepResult{u.point, std::move(y), z.point, std::move(next), u.residual, z.residual, u.iterations,
                    z.iterations};
}

StepResult algorithm2_step(const ProblemInstance& p, const StepSchedule& s, long n, const Point& xn,
                           const InnerSolverOptions& inner, double tol) {
  if (!p.field) throw InvalidArgument("algorithm 2 needs a vector field");
  const FieldOutcome u = apply_field_resolvent(p, s.lambda(n), xn, inner, tol);
  Point next = geodesic_point(xn, u.point, s.alpha(n));
  return StepResult{u.point, next, next, next, u.residual, 0.0, u.iterations, 0};
}

StepResult algorithm3_step(const ProblemInstance& p, const StepSchedule& s, long n, const Point& xn,
                           const InnerSolverOptions& inner, double tol) {
  if (!p.bifunction) throw InvalidArgument("algorithm 3 needs a bifunction");
  const FieldOutcome z = apply_equilibrium_resolvent(p, s.r(n), xn, inner, tol);
  Point next = geodesic_point(xn, z.point, s.beta(n));
  return StepResult{xn, xn, z.point, std::move(next), 0.0, z.residual, 0, z.iterations};
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::StepTolerance: return "step_tolerance";
    case Termination::ReferenceTolerance: return "reference_tolerance";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::ResolventFailure: return "resolvent_failure";
    case Termination::ScheduleViolation: return "schedule_violation";
  }
  return "unknown";
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Combined: return "combined";
    case Algorithm::InclusionOnly: return "inclusion_only";
    case Algorithm::EquilibriumOnly: return "equilibrium_only";
  }
  return "unknown";
}

long IterationTrace::steps() const {
  return static_cast<long>(std::count_if(records.begin(), records.end(),
                                         [](const IterationRecord& r) { return r.step.has_value(); }));
}

Algorithm natural_algorithm(const ProblemInstance& p) {
  if (p.field && p.bifunction) return Algorithm::Combined;
  if (p.field) return Algorithm::InclusionOnly;
  return Algorithm::EquilibriumOnly;
}

IterationTrace run(const ProblemInstance& p, const StepSchedule& s, const StoppingRule& stop,
                   const RunOptions& options) {
  if (stop.max_iter < 0) throw InvalidArgument("max_iter must be nonnegative");
  if (stop.step_tol && !(*stop.step_tol >= 0.0)) throw InvalidArgument("step tolerance must be nonnegative");
  if (stop.ref_tol && !(*stop.ref_tol >= 0.0)) throw InvalidArgument("reference tolerance must be nonnegative");
  if (stop.ref_tol && !p.reference) throw InvalidArgument("reference tolerance requested without a reference");
  if (options.algorithm == Algorithm::InclusionOnly && !p.field)
    throw InvalidArgument("algorithm 2 needs a vector field");
  if (options.algorithm == Algorithm::EquilibriumOnly && !p.bifunction)
    throw InvalidArgument("algorithm 3 needs a bifunction");

  const ScheduleReport sched = validate_schedule(s, std::max<long>(stop.max_iter, 1));
  if (!sched.pass) throw ScheduleViolation(sched.summary(), sched.first ? sched.first->index : -1);

  IterationTrace trace;
  trace.problem_id = p.id;
  trace.algorithm = options.algorithm;

  auto fill_common = [&](IterationRecord& rec, long n, const Point& x) {
    rec.n = n;
    rec.x = x;
    if (p.reference) rec.dx_ref = dist(x, *p.reference);
    rec.alpha = s.alpha(n);
    rec.beta = s.beta(n);
    rec.lambda = s.lambda(n);
    rec.r = s.r(n);
  };
  auto terminal = [&](long n, const Point& x, Termination why, std::string message) {
    IterationRecord rec(n, x);
    fill_common(rec, n, x);
    trace.records.push_back(std::move(rec));
    trace.termination = why;
    trace.message = std::move(message);
  };

  Point x = p.x0;
  double previous_step = std::numeric_limits<double>::infinity();
  for (long n = 0;; ++n) {
    if (stop.ref_tol && dist(x, *p.reference) <= *stop.ref_tol) {
      terminal(n, x, Termination::ReferenceTolerance, "reference distance within tolerance");
      return trace;
    }
    if (n >= stop.max_iter) {
      terminal(n, x, Termination::MaxIterations, "iteration limit reached");
      return trace;
    }
    const double tol = options.inner.tolerance_for(previous_step);
    const auto t0 = std::chrono::steady_clock::now();
    StepResult step{x, x, x, x};
    try {
      switch (options.algorithm) {
        case Algorithm::Combined: step = algorithm1_step(p, s, n, x, options.inner, tol); break;
        case Algorithm::InclusionOnly: step = algorithm2_step(p, s, n, x, options.inner, tol); break;
        case Algorithm::EquilibriumOnly: step = algorithm3_step(p, s, n, x, options.inner, tol); break;
      }
    } catch (const NonconvergenceError& e) {
      terminal(n, x, Termination::ResolventFailure, e.what());
      return trace;
    } catch (const DomainError& e) {
      terminal(n, x, Termination::ResolventFailure, e.what());
      return trace;
    }
    const auto t1 = std::chrono::steady_clock::now();

    IterationRecord rec(n, x);
    fill_common(rec, n, x);
    rec.dx_step = dist(x, step.next);
    rec.dx_y = dist(x, step.y);
    rec.dx_z = dist(x, step.z);
    rec.dx_u = dist(x, step.u);
    rec.res_a = step.res_a;
    rec.res_f = step.res_f;
    if (options.record_wall_time) rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double dx = rec.dx_step;
    Point next = step.next;
    rec.step = std::move(step);
    trace.records.push_back(std::move(rec));

    x = std::move(next);
    previous_step = dx;
    if (stop.step_tol && dx <= *stop.step_tol) {
      terminal(n + 1, x, Termination::StepTolerance, "consecutive step within tolerance");
      return trace;
    }
  }
}

FejerReport fejer_diagnostics(const IterationTrace& trace, const ProblemInstance& p, const Point& ref,
                              double slack, double composite_slack, double membership_tol) {
  FejerReport rep;
  rep.membership_residual = omega_membership_residual(p, ref);
  if (!(rep.membership_residual <= membership_tol)) {
    rep.refused = true;
    return rep;
  }
  for (const IterationRecord& rec : trace.records) {
    rep.ref_distances.push_back(dist(rec.x, ref));
    if (!rec.step) continue;
    rep.step_distances.push_back(rec.dx_step);
    rep.y_gaps.push_back(rec.dx_y);
    const double dy = dist(rec.step->y, ref);
    const double dx = rep.ref_distances.back();
    const double du = dist(rec.x, rec.step->u);
    rep.composite_max_violation = std::max(rep.composite_max_violation, dy * dy - dx * dx + rec.alpha * du * du);
  }
  for (std::size_t i = 1; i < rep.ref_distances.size(); ++i)
    rep.max_violation = std::max(rep.max_violation, rep.ref_distances[i] - rep.ref_distances[i - 1]);
  rep.pass = rep.max_violation <= slack;
  rep.composite_pass = rep.composite_max_violation <= composite_slack;
  if (!rep.step_distances.empty()) {
    rep.final_step = rep.step_distances.back();
    rep.final_y_gap = rep.y_gaps.back();
    const std::size_t half = rep.step_distances.size() / 2;
    const auto head_max = std::max_element(rep.step_distances.begin(), rep.step_distances.begin() + half);
    const double head = half == 0 ? rep.step_distances.front() : *head_max;
    const double tail = *std::max_element(rep.step_distances.begin() + half, rep.step_distances.end());
    rep.step_tail_ratio = head > 0.0 ? tail / head : 0.0;
  }
  return rep;
}

}  // namespace hsplit
