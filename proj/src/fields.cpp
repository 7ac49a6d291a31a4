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

#include "hsplit/fields.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "hsplit/errors.hpp"

namespace hsplit {

VectorField::VectorField(std::string name, Manifold manifold, Arity arity, Evaluator evaluator,
                         FieldStructure structure)
    : name_(std::move(name)),
      manifold_(std::move(manifold)),
      arity_(arity),
      evaluator_(std::move(evaluator)),
      structure_(std::move(structure)) {
  if (!evaluator_) throw InvalidArgument("vector field '" + name_ + "' has no evaluator");
}

std::vector<TangentVector> VectorField::evaluate(const Point& x) const {
  if (x.manifold() != manifold_) throw ManifoldMismatch("field '" + name_ + "' evaluated off its manifold");
  std::vector<TangentVector> out = evaluator_(x);
  for (const auto& v : out) {
    if (!v.components().allFinite()) throw DomainError("field '" + name_ + "' returned a non-finite vector");
    if (!same_base(v.base(), x)) throw BaseMismatch("field '" + name_ + "' returned a vector at another base point");
  }
  if (arity_ == Arity::SingleValued && out.size() > 1) {
    throw DomainError("single-valued field '" + name_ + "' returned several vectors");
  }
  return out;
}

bool VectorField::contains(const Point& x, const TangentVector& v) const {
  if (membership_) return membership_(x, v);
  const auto gens = evaluate(x);
  if (gens.empty()) return false;
  return norm(nearest_in_hull(gens, v) - v) <= 1e-12 * (1.0 + norm(v));
}

VectorField& VectorField::with_zeros(std::vector<Point> zeros) {
  zeros_ = std::move(zeros);
  return *this;
}

VectorField& VectorField::with_membership(Membership m) {
  membership_ = std::move(m);
  return *this;
}

VectorField& VectorField::with_resolvent(ClosedFormResolvent r) {
  resolvent_ = std::move(r);
  return *this;
}

VectorField linear_field(Eigen::MatrixXd q) {
  if (q.rows() != q.cols() || q.rows() < 1) throw InvalidArgument("linear_field: matrix must be square");
  const Manifold m = Manifold::euclidean(static_cast<int>(q.rows()));
  VectorField f(
      "linear", m, Arity::SingleValued,
      [m, q](const Point& x) { return std::vector<TangentVector>{m.tangent(x, q * x.coords())}; }, LinearField{q});
  f.with_zeros({m.origin()});
  return f;
}

VectorField distance_gradient_field(const Point& anchor, double weight) {
  if (!(weight > 0.0)) throw InvalidArgument("distance_gradient_field: weight must be positive");
  VectorField f(
      "distance_gradient", anchor.manifold(), Arity::SingleValued,
      [anchor, weight](const Point& x) { return std::vector<TangentVector>{log_map(x, anchor) * (-weight)}; },
      DistanceGradientField{anchor, weight});
  f.with_zeros({anchor});
  return f;
}

VectorField subdifferential_of(ConvexFunction g) {
  auto fn = std::make_shared<const ConvexFunction>(std::move(g));
  VectorField f(
      "subdiff:" + fn->name, fn->manifold, Arity::Multivalued, [fn](const Point& x) { return fn->subgradients(x); },
      SubdifferentialField{fn});
  if (fn->contains) f.with_membership(fn->contains);
  f.with_zeros(fn->minimizers);
  return f;
}

VectorField zero_field(const Manifold& m) {
  return VectorField(
      "zero", m, Arity::SingleValued, [](const Point& x) { return std::vector<TangentVector>{x.manifold().zero(x)}; },
      ZeroField{});
}

VectorField anti_monotone_field(int dim) {
  const Manifold m = Manifold::euclidean(dim);
  VectorField f("anti_monotone", m, Arity::SingleValued,
                [m](const Point& x) { return std::vector<TangentVector>{m.tangent(x, -x.coords())}; });
  f.with_zeros({m.origin()});
  return f;
}

namespace {

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  Eigen::VectorXd u = v;
  std::sort(u.data(), u.data() + u.size(), std::greater<>());
  double cumsum = 0.0, theta = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    cumsum += u[i];
    const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

}  // namespace

TangentVector nearest_in_hull(std::span<const TangentVector> vs, const TangentVector& target) {
  if (vs.empty()) throw DomainError("nearest_in_hull: empty set");
  if (vs.size() == 1) return vs.front();
  if (vs.size() == 2) {
    const TangentVector edge = vs[1] - vs[0];
    const double len2 = inner(edge, edge);
    if (len2 == 0.0) return vs[0];
    const double s = std::clamp(inner(target - vs[0], edge) / len2, 0.0, 1.0);
    return vs[0] + edge * s;
  }
  // Projected gradient on the simplex weights for min |sum w_i v_i - target|^2.
  const auto m = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd gram(m, m);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b[i] = inner(vs[static_cast<std::size_t>(i)], target);
    for (Eigen::Index j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = inner(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]);
    }
  }
  const double lip = std::max(gram.diagonal().sum(), 1e-300);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  for (int it = 0; it < 20000; ++it) {
    const Eigen::VectorXd next = project_simplex(w - (gram * w - b) / lip);
    const double change = (next - w).cwiseAbs().maxCoeff();
    w = next;
    if (change < 1e-16) break;
  }
  TangentVector out = vs.front() * w[0];
  for (Eigen::Index i = 1; i < m; ++i) out = out + vs[static_cast<std::size_t>(i)] * w[i];
  return out;
}

TangentVector min_norm_element(std::span<const TangentVector> vs) {
  if (vs.empty()) throw DomainError("min_norm_element: empty set");
  return nearest_in_hull(vs, vs.front().manifold().zero(vs.front().base()));
}

double zero_residual(const VectorField& a, const Point& x) {
  const auto gens = a.evaluate(x);
  if (gens.empty()) throw DomainError("field '" + a.name() + "' is empty at the queried point");
  const TangentVector best = min_norm_element(gens);
  const TangentVector zero = x.manifold().zero(x);
  if (a.contains(x, zero)) return 0.0;
  return norm(best);
}

void ResolventConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("resolvent: lambda must be positive");
  if (!(inner_tol > 0.0)) throw InvalidArgument("resolvent: inner_tol must be positive");
  if (inner_max_iter < 1) throw InvalidArgument("resolvent: inner_max_iter must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("resolvent: damping must lie in (0,1]");
}

namespace {

struct Residual {
  TangentVector step;  // log_z x - lambda a(z) with the min-norm selection
  double value;        // min over the hull
};

Residual residual_at(const VectorField& a, double lambda, const Point& x, const Point& z) {
  const auto gens = a.evaluate(z);
  if (gens.empty()) throw DomainError("field '" + a.name() + "' is empty at a resolvent iterate");
  const TangentVector lx = log_map(z, x);
  const TangentVector step = lx - min_norm_element(gens) * lambda;
  if (gens.size() == 1) return {step, norm(step)};
  return {step, norm(lx - nearest_in_hull(gens, lx * (1.0 / lambda)) * lambda)};
}

std::optional<Point> closed_form(const VectorField& a, double lambda, const Point& x) {
  return std::visit(
      [&](const auto& s) -> std::optional<Point> {
        if (a.closed_form_resolvent()) return a.closed_form_resolvent()(x, lambda);
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ZeroField>) {
          return x;
        } else if constexpr (std::is_same_v<S, LinearField>) {
          const auto n = s.matrix.rows();
          const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) + lambda * s.matrix;
          return x.manifold().point(lhs.partialPivLu().solve(x.coords()));
        } else if constexpr (std::is_same_v<S, DistanceGradientField>) {
          return geodesic_point(x, s.anchor, lambda * s.weight / (1.0 + lambda * s.weight));
        } else if constexpr (std::is_same_v<S, SubdifferentialField>) {
          if (s.function->prox) return s.function->prox(x, lambda);
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      a.structure());
}

}  // namespace

double resolvent_residual(const VectorField& a, double lambda, const Point& x, const Point& z) {
  return residual_at(a, lambda, x, z).value;
}

ResolventResult resolvent(const VectorField& a, const ResolventConfig& cfg, const Point& x,
                          const std::optional<Point>& initial_guess) {
  cfg.validate();
  if (x.manifold() != a.manifold()) throw ManifoldMismatch("resolvent: point is not on the field's manifold");
  if (auto z = closed_form(a, cfg.lambda, x)) {
    return {*z, resolvent_residual(a, cfg.lambda, x, *z), 0, true};
  }

  Point z = initial_guess.value_or(x);
  Residual r = residual_at(a, cfg.lambda, x, z);
  double theta = cfg.damping;
  int it = 0;
  while (r.value > cfg.inner_tol) {
    if (it >= cfg.inner_max_iter) {
      throw NonconvergenceError("resolvent of '" + a.name() + "' did not converge", r.value, it);
    }
    ++it;
    const Point trial = exp_map(z, r.step * theta);
    Residual rt = residual_at(a, cfg.lambda, x, trial);
    if (rt.value < r.value) {
      z = trial;
      r = std::move(rt);
    } else {
      theta *= 0.5;
      if (theta < 1e-14) {
        throw NonconvergenceError("resolvent of '" + a.name() + "' stalled", r.value, it);
      }
    }
  }
  return {z, r.value, it, false};
}

MonotonicityReport check_monotone(const VectorField& a, std::span<const std::pair<Point, Point>> pairs, double tol) {
  MonotonicityReport rep;
  for (const auto& [x, y] : pairs) {
    const auto ax = a.evaluate(x);
    const auto ay = a.evaluate(y);
    const TangentVector lxy = log_map(x, y);
    const TangentVector lyx = log_map(y, x);
    for (const auto& u : ax) {
      for (const auto& v : ay) {
        const double slack = -inner(v, lyx) - inner(u, lxy);
        if (slack < rep.min_slack) {
          rep.min_slack = slack;
          rep.witness = MonotonicityWitness{x, y, u, v, slack};
        }
      }
    }
    ++rep.pairs_checked;
  }
  rep.pass = rep.min_slack >= -tol;
  return rep;
}

FirmNonexpansiveReport check_firmly_nonexpansive(const PointMap& t, const Point& x, const Point& y,
                                                 std::span<const double> grid, double tol) {
  FirmNonexpansiveReport rep;
  const Point tx = t(x), ty = t(y);
  const TangentVector vx = log_map(x, tx), vy = log_map(y, ty);
  for (double s : grid) {
    const Point px = s == 1.0 ? tx : exp_map(x, vx * s);
    const Point py = s == 1.0 ? ty : exp_map(y, vy * s);
    rep.phi.push_back(dist(px, py));
  }
  for (std::size_t k = 1; k < rep.phi.size(); ++k) {
    rep.max_increase = std::max(rep.max_increase, rep.phi[k] - rep.phi[k - 1]);
  }
  rep.pass = rep.phi.size() < 2 || rep.max_increase <= tol;
  rep.nonexpansive = dist(tx, ty) <= dist(x, y) + tol;
  rep.pass = rep.pass && rep.nonexpansive;
  return rep;
}

double firmly_nonexpansive_inequality(const PointMap& t, const Point& fixed_point, const Point& y, double fixed_tol) {
  const double defect = dist(t(fixed_point), fixed_point);
  if (defect > fixed_tol) {
    throw PreconditionError("firmly_nonexpansive_inequality: point is not fixed (d(Tp,p) = " +
                            std::to_string(defect) + ")");
  }
  const Point ty = t(y);
  return inner(log_map(ty, fixed_point), log_map(ty, y));
}

ContinuityReport resolvent_continuity_probe(const VectorField& a, const ResolventConfig& cfg,
                                            std::span<const double> lambdas, std::span<const Point> xs,
                                            double lambda_limit, const Point& x_limit, double tol) {
  if (lambdas.size() != xs.size() || xs.empty()) {
    throw InvalidArgument("resolvent_continuity_probe: sequences must be nonempty and of equal length");
  }
  ResolventConfig lim = cfg;
  lim.lambda = lambda_limit;
  const Point target = resolvent(a, lim, x_limit).point;
  ContinuityReport rep;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    ResolventConfig c = cfg;
    c.lambda = lambdas[n];
    rep.gaps.push_back(dist(resolvent(a, c, xs[n]).point, target));
  }
  rep.final_gap = rep.gaps.back();
  rep.pass = rep.final_gap <= tol;
  return rep;
}

}  // namespace hsplit
