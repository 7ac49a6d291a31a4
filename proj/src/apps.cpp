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

#include "hsplit/apps.hpp"

#include <algorithm>
#include <array>

#include "hsplit/errors.hpp"

namespace hsplit {

namespace {

constexpr std::uint64_t kProgramCheckSeed = 0x5eed0001;
constexpr std::uint64_t kSaddleCheckSeed = 0x5eed0002;
constexpr double kMembershipTol = 1e-6;

std::string describe_pair(const Point& x, const Point& y) {
  return "x = " + serialize_point(x) + ", y = " + serialize_point(y);
}

std::pair<Point, Point> saddle_center(const SaddleProblem& sp) {
  if (sp.known_saddle) return *sp.known_saddle;
  return {sp.m1.origin(), sp.m2.origin()};
}

}  // namespace

ProgramCheck check_program(const ConvexProgram& prog, Rng& rng, int pairs, double radius, double tol) {
  const ConvexFunction& g = *prog.objective;
  const Point center = g.minimizers.empty() ? g.manifold.origin() : g.minimizers.front();
  const std::vector<double> grid = unit_grid(11);
  ProgramCheck rep;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    const Point x = random_point_near(center, rng, radius);
    const Point y = random_point_near(center, rng, radius);
    double local = geodesic_convexity_slack(g.value, x, y, grid);
    rep.convexity_min = std::min(rep.convexity_min, local);
    const double gx = g(x);
    const double gy = g(y);
    const TangentVector lxy = log_map(x, y);
    for (const TangentVector& s : g.subgradients(x)) {
      const double slack = gy - gx - inner(s, lxy);
      rep.subgradient_min = std::min(rep.subgradient_min, slack);
      local = std::min(local, slack);
    }
    if (local < worst) {
      worst = local;
      rep.witness = std::make_pair(x, y);
    }
  }
  rep.pass = rep.convexity_min >= -tol && rep.subgradient_min >= -tol;
  return rep;
}

VectorField subdifferential_field(const ConvexProgram& prog) {
  Rng rng(kProgramCheckSeed);
  const ProgramCheck chk = check_program(prog, rng, 50);
  if (!chk.pass) {
    throw RegistrationRefused("'" + prog.objective->name + "' fails its convexity spot check at " +
                              describe_pair(chk.witness->first, chk.witness->second));
  }
  return subdifferential_of(*prog.objective);
}

ProblemInstance minimization_problem(const ConvexProgram& prog, const std::optional<Bifunction>& f, const Point& x0,
                                     std::string id) {
  ProblemInstance p{.id = std::move(id),
                    .manifold = prog.manifold(),
                    .field = subdifferential_field(prog),
                    .bifunction = f,
                    .reference = std::nullopt,
                    .x0 = x0,
                    .description = "minimize " + prog.objective->name,
                    .provenance = "registered minimizer"};
  for (const Point& m : prog.known_minimizers()) {
    if (omega_membership_residual(p, m) <= kMembershipTol) {
      p.reference = m;
      break;
    }
  }
  p.validate();
  return p;
}

IterationTrace solve_minimization(const ConvexProgram& prog, const std::optional<Bifunction>& f, const Point& x0,
                                  const StepSchedule& s, const StoppingRule& stop, const RunOptions& options) {
  const ProblemInstance p = minimization_problem(prog, f, x0);
  RunOptions opts = options;
  if (!f) opts.algorithm = Algorithm::InclusionOnly;
  return run(p, s, stop, opts);
}

SaddleCheck check_saddle_problem(const SaddleProblem& sp, Rng& rng, int probes, double radius, double tol) {
  const auto [cx, cy] = saddle_center(sp);
  const std::vector<double> grid = unit_grid(11);
  SaddleCheck rep;
  for (int i = 0; i < probes; ++i) {
    const Point x1 = random_point_near(cx, rng, radius);
    const Point x2 = random_point_near(cx, rng, radius);
    const Point y1 = random_point_near(cy, rng, radius);
    const Point y2 = random_point_near(cy, rng, radius);
    rep.convex_min = std::min(
        rep.convex_min, geodesic_convexity_slack([&](const Point& y) { return sp.h(x1, y); }, y1, y2, grid));
    rep.concave_min = std::min(
        rep.concave_min, geodesic_convexity_slack([&](const Point& x) { return -sp.h(x, y1); }, x1, x2, grid));
  }
  rep.pass = rep.convex_min >= -tol && rep.concave_min >= -tol;
  return rep;
}

VectorField saddle_field(const SaddleProblem& sp) {
  Rng rng(kSaddleCheckSeed);
  const SaddleCheck chk = check_saddle_problem(sp, rng, 50);
  if (!chk.pass) {
    throw RegistrationRefused("saddle '" + sp.name + "' fails its convex-concave spot check (convex slack " +
                              std::to_string(chk.convex_min) + ", concave slack " + std::to_string(chk.concave_min) +
                              ")");
  }
  const Manifold m = sp.product();
  const auto concave = sp.concave_side;
  const auto convex = sp.convex_side;
  VectorField v(
      sp.name, m, Arity::Multivalued,
      [m, concave, convex](const Point& p) {
        const Point x = m.factor_point(p, 0);
        const Point y = m.factor_point(p, 1);
        const auto gx = concave(x, y);
        const auto gy = convex(x, y);
        std::vector<TangentVector> out;
        out.reserve(gx.size() * gy.size());
        for (const auto& u : gx) {
          for (const auto& w : gy) {
            const std::array<TangentVector, 2> parts{u, w};
            out.push_back(m.combine(p, parts));
          }
        }
        return out;
      },
      SaddleFieldTag{sp.name});
  if (sp.known_saddle) {
    const std::array<Point, 2> parts{sp.known_saddle->first, sp.known_saddle->second};
    v.with_zeros({m.combine(parts)});
  }
  if (sp.resolvent) v.with_resolvent(sp.resolvent);
  return v;
}

ProblemInstance saddle_problem_instance(const SaddleProblem& sp, const std::optional<Bifunction>& f, const Point& x0,
                                        std::string id) {
  ProblemInstance p{.id = std::move(id),
                    .manifold = sp.product(),
                    .field = saddle_field(sp),
                    .bifunction = f,
                    .reference = std::nullopt,
                    .x0 = x0,
                    .description = "saddle point of " + sp.name,
                    .provenance = "registered saddle"};
  for (const Point& z : p.field->known_zeros()) {
    if (omega_membership_residual(p, z) <= kMembershipTol) {
      p.reference = z;
      break;
    }
  }
  p.validate();
  return p;
}

IterationTrace solve_saddle(const SaddleProblem& sp, const std::optional<Bifunction>& f, const Point& x0,
                            const StepSchedule& s, const StoppingRule& stop, const RunOptions& options) {
  const ProblemInstance p = saddle_problem_instance(sp, f, x0);
  RunOptions opts = options;
  if (!f) opts.algorithm = Algorithm::InclusionOnly;
  return run(p, s, stop, opts);
}

SaddleVerification verify_saddle(const SaddleProblem& sp, const Point& candidate, Rng& rng, int probes,
                                 double radius, double slack) {
  const Manifold m = sp.product();
  if (candidate.manifold() != m) throw ManifoldMismatch("verify_saddle: candidate is not on " + m.tag());
  const Point xs = m.factor_point(candidate, 0);
  const Point ys = m.factor_point(candidate, 1);
  const double hs = sp.h(xs, ys);
  SaddleVerification rep;
  rep.probes = probes;
  for (int i = 0; i < probes; ++i) {
    const Point x = random_point_near(xs, rng, radius);
    const Point y = random_point_near(ys, rng, radius);
    rep.left_max = std::max(rep.left_max, sp.h(x, ys) - hs);
    rep.right_max = std::max(rep.right_max, hs - sp.h(xs, y));
  }
  rep.pass = rep.left_max <= slack && rep.right_max <= slack;
  return rep;
}

SaddleProblem bilinear_saddle(int dim) {
  if (dim < 1) throw InvalidArgument("bilinear_saddle: dim must be positive");
  const Manifold e = Manifold::euclidean(dim);
  SaddleProblem sp{.name = "bilinear",
                   .m1 = e,
                   .m2 = e,
                   .h = [](const Point& x, const Point& y) { return x.coords().dot(y.coords()); },
                   .concave_side = [e](const Point& x,
                                       const Point& y) { return std::vector{e.tangent(x, -y.coords())}; },
                   .convex_side = [e](const Point& x, const Point& y) { return std::vector{e.tangent(y, x.coords())}; },
                   .known_saddle = std::make_pair(e.origin(), e.origin()),
                   .resolvent = {}};
  const Manifold m = sp.product();
  // z + lambda (-z_y, z_x) = p, solved blockwise.
  sp.resolvent = [m, dim](const Point& p, double lambda) {
    const Eigen::VectorXd px = p.coords().head(dim);
    const Eigen::VectorXd py = p.coords().tail(dim);
    const double den = 1.0 + lambda * lambda;
    Eigen::VectorXd z(2 * dim);
    z.head(dim) = (px + lambda * py) / den;
    z.tail(dim) = (py - lambda * px) / den;
    return m.point(std::move(z));
  };
  return sp;
}

SaddleProblem distance_saddle(const Point& a, const Point& b) {
  SaddleProblem sp{.name = "distance_saddle",
                   .m1 = a.manifold(),
                   .m2 = b.manifold(),
                   .h =
                       [a, b](const Point& x, const Point& y) {
                         const double dy = dist(y, b);
                         const double dx = dist(x, a);
                         return 0.5 * (dy * dy - dx * dx);
                       },
                   .concave_side = [a](const Point& x, const Point&) { return std::vector{-log_map(x, a)}; },
                   .convex_side = [b](const Point&, const Point& y) { return std::vector{-log_map(y, b)}; },
                   .known_saddle = std::make_pair(a, b),
                   .resolvent = {}};
  const Manifold m = sp.product();
  sp.resolvent = [m, a, b](const Point& p, double lambda) {
    const double t = lambda / (1.0 + lambda);
    const std::array<Point, 2> parts{geodesic_point(m.factor_point(p, 0), a, t),
                                     geodesic_point(m.factor_point(p, 1), b, t)};
    return m.combine(parts);
  };
  return sp;
}

SaddleProblem zero_saddle(const Manifold& m1, const Manifold& m2) {
  return SaddleProblem{.name = "zero_saddle",
                       .m1 = m1,
                       .m2 = m2,
                       .h = [](const Point&, const Point&) { return 0.0; },
                       .concave_side = [m1](const Point& x, const Point&) { return std::vector{m1.zero(x)}; },
                       .convex_side = [m2](const Point&, const Point& y) { return std::vector{m2.zero(y)}; },
                       .known_saddle = std::make_pair(m1.origin(), m2.origin()),
                       .resolvent = [](const Point& p, double) { return p; }};
}

}  // namespace hsplit
