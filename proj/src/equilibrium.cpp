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

#include "hsplit/equilibrium.hpp"

#include <cmath>

#include "hsplit/errors.hpp"

namespace hsplit {

Bifunction::Bifunction(std::string name, Manifold manifold, Evaluator evaluator, BifunctionStructure structure,
                       PartialGradient partial_gradient)
    : name_(std::move(name)),
      manifold_(std::move(manifold)),
      evaluator_(std::move(evaluator)),
      structure_(std::move(structure)),
      partial_gradient_(std::move(partial_gradient)) {
  if (!evaluator_) throw InvalidArgument("bifunction '" + name_ + "' has no evaluator");
}

double Bifunction::operator()(const Point& x, const Point& y) const {
  if (x.manifold() != manifold_ || y.manifold() != manifold_) {
    throw ManifoldMismatch("bifunction '" + name_ + "' evaluated off its manifold");
  }
  const double v = evaluator_(x, y);
  if (!std::isfinite(v)) throw DomainError("bifunction '" + name_ + "' returned a non-finite value");
  return v;
}

Bifunction& Bifunction::with_equilibria(std::vector<Point> pts) {
  equilibria_ = std::move(pts);
  return *this;
}

Bifunction& Bifunction::with_anchors(std::vector<Point> pts) {
  anchors_ = std::move(pts);
  return *this;
}

Bifunction convex_difference(ConvexFunction g) {
  auto fn = std::make_shared<const ConvexFunction>(g);
  auto field = std::make_shared<const VectorField>(subdifferential_of(std::move(g)));
  Bifunction b(
      "convex_difference:" + fn->name, fn->manifold,
      [fn](const Point& x, const Point& y) { return x == y ? 0.0 : fn->value(y) - fn->value(x); },
      ConvexDifference{fn, field},
      [fn](const Point&, const Point& y) { return min_norm_element(fn->subgradients(y)); });
  b.with_equilibria(fn->minimizers).with_anchors(fn->anchors);
  return b;
}

Bifunction field_induced(VectorField v) {
  if (v.arity() != Arity::SingleValued) throw InvalidArgument("field_induced: field must be single-valued");
  auto field = std::make_shared<const VectorField>(std::move(v));
  Bifunction b(
      "field_induced:" + field->name(), field->manifold(),
      [field](const Point& x, const Point& y) {
        if (x == y) return 0.0;
        return inner(field->evaluate(x).front(), log_map(x, y));
      },
      FieldInduced{field});
  std::vector<Point> anchors;
  if (const auto* dg = std::get_if<DistanceGradientField>(&field->structure())) anchors.push_back(dg->anchor);
  b.with_equilibria(field->known_zeros()).with_anchors(std::move(anchors));
  return b;
}

Bifunction zero_bifunction(const Manifold& m) {
  return Bifunction(
      "zero", m, [](const Point&, const Point&) { return 0.0; }, ZeroBifunction{},
      [](const Point&, const Point& y) { return y.manifold().zero(y); });
}

Bifunction generic_bifunction(std::string name, Manifold m, Bifunction::Evaluator f,
                              Bifunction::PartialGradient partial_gradient) {
  return Bifunction(std::move(name), std::move(m), std::move(f), GenericSampled{}, std::move(partial_gradient));
}

void EquilibriumResolventConfig::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("equilibrium resolvent: r must be positive");
  if (!(inner_tol > 0.0)) throw InvalidArgument("equilibrium resolvent: inner_tol must be positive");
  if (inner_max_iter < 1) throw InvalidArgument("equilibrium resolvent: inner_max_iter must be >= 1");
  if (!(gd_step > 0.0) || gd_steps < 1) throw InvalidArgument("equilibrium resolvent: bad gradient-descent settings");
}

namespace {

// Central differences along an orthonormal tangent basis.
TangentVector finite_difference_gradient(const Bifunction& f, const Point& w, const Point& y) {
  constexpr double h = 1e-6;
  const Manifold& m = y.manifold();
  TangentVector g = m.zero(y);
  for (const auto& e : m.tangent_basis(y)) {
    const double fp = f(w, exp_map(y, e * h));
    const double fm = f(w, exp_map(y, e * (-h)));
    g = g + e * ((fp - fm) / (2.0 * h));
  }
  return g;
}

ResolventConfig field_config(const EquilibriumResolventConfig& cfg) {
  ResolventConfig c;
  c.lambda = cfg.r;
  c.inner_tol = cfg.inner_tol;
  c.inner_max_iter = cfg.inner_max_iter;
  c.damping = cfg.damping;
  return c;
}

EquilibriumResolventResult best_response(const Bifunction& f, const EquilibriumResolventConfig& cfg, const Point& x) {
  Point w = x;
  for (int k = 1; k <= cfg.inner_max_iter; ++k) {
    Point y = w;
    for (int s = 0; s < cfg.gd_steps; ++s) {
      const TangentVector gy = f.partial_gradient() ? f.partial_gradient()(w, y) : finite_difference_gradient(f, w, y);
      const TangentVector grad = gy * cfg.r - log_map(y, x);
      if (norm(grad) <= 0.1 * cfg.inner_tol) break;
      y = exp_map(y, grad * (-cfg.gd_step));
    }
    const double move = dist(y, w);
    w = std::move(y);
    if (move <= cfg.inner_tol) return {w, move, k, false};
  }
  throw NonconvergenceError("best-response resolvent of '" + f.name() + "' did not converge", dist(w, x), cfg.inner_max_iter);
}

}  // namespace

EquilibriumResolventResult resolvent_T(const Bifunction& f, const EquilibriumResolventConfig& cfg, const Point& x) {
  cfg.validate();
  if (x.manifold() != f.manifold()) throw ManifoldMismatch("resolvent_T: point is not on the bifunction's manifold");
  return std::visit(
      [&](const auto& s) -> EquilibriumResolventResult {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ZeroBifunction>) {
          return {x, 0.0, 0, true};
        } else if constexpr (std::is_same_v<S, ConvexDifference>) {
          const auto res = resolvent(*s.subdifferential, field_config(cfg), x);
          return {res.point, res.residual, res.iterations, true};
        } else if constexpr (std::is_same_v<S, FieldInduced>) {
          const auto res = resolvent(*s.field, field_config(cfg), x);
          return {res.point, res.residual, res.iterations, true};
        } else {
          return best_response(f, cfg, x);
        }
      },
      f.structure());
}

ViCertificate certify_resolvent_T(const Bifunction& f, double r, const Point& x, const Point& z, Rng& rng,
                                  int directions, double radius) {
  const TangentVector lx = log_map(z, x);
  auto value = [&](const Point& y) { return f(z, y) - inner(lx, log_map(z, y)) / r; };
  ViCertificate cert{std::numeric_limits<double>::infinity(), 0};
  for (int i = 0; i < directions; ++i) {
    cert.min_value = std::min(cert.min_value, value(exp_map(z, random_direction(z, rng, radius))));
    ++cert.probes;
  }
  for (const auto& a : f.anchors()) {
    cert.min_value = std::min(cert.min_value, value(a));
    ++cert.probes;
  }
  return cert;
}

double equilibrium_residual(const Bifunction& f, const Point& x, const EquilibriumResolventConfig& cfg) {
  return dist(resolvent_T(f, cfg, x).point, x);
}

AssumptionReport check_assumptions(const Bifunction& f, std::span<const Point> samples, int grid_points) {
  AssumptionReport rep;
  const auto grid = unit_grid(grid_points);
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& x = samples[i];
    rep.a1_min = std::min(rep.a1_min, f(x, x));
    if (n < 2) continue;
    const Point& y = samples[(i + 1) % n];
    rep.a2_max = std::max(rep.a2_max, f(x, y) + f(y, x));
    if (n < 3) continue;
    const Point& y2 = samples[(i + 2) % n];
    rep.a4_min = std::min(rep.a4_min,
                          geodesic_convexity_slack([&](const Point& p) { return f(x, p); }, y, y2, grid));
  }
  rep.a1 = rep.a1_min >= -1e-12;
  rep.a2 = rep.a2_max <= 1e-9;
  rep.a4 = rep.a4_min >= -1e-9;
  return rep;
}

}  // namespace hsplit
