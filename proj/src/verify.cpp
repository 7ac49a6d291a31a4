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

#include "hsplit/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>

#include "hsplit/apps.hpp"
#include "hsplit/errors.hpp"
#include "hsplit/problems.hpp"
#include "hsplit/splitting.hpp"
#include "hsplit/trace_io.hpp"

namespace hsplit {

namespace {

using Vec = Eigen::VectorXd;

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Suite {
 public:
  Suite(std::string name, const VerifyOptions& opt, VerifyReport& out) : name_(std::move(name)), opt_(opt), out_(out) {}

  Rng rng(const std::string& property) const { return Rng(fnv1a(name_ + "/" + property, opt_.seed * 0x9e3779b97f4a7c15ull + 1)); }
  const VerifyOptions& options() const { return opt_; }

  /// pass iff worst <= bound.
  void at_most(const std::string& prop, double worst, double bound, std::size_t n, std::string detail = {}) {
    add(prop, worst, "<=", bound, worst <= bound, n, std::move(detail));
  }
  /// pass iff worst >= bound.
  void at_least(const std::string& prop, double worst, double bound, std::size_t n, std::string detail = {}) {
    add(prop, worst, ">=", bound, worst >= bound, n, std::move(detail));
  }
  void expect(const std::string& prop, bool ok, std::size_t n, std::string detail = {}) {
    add(prop, ok ? 1.0 : 0.0, ">=", 1.0, ok, n, std::move(detail));
  }
  /// Runs `body`; an exception becomes a failed property.
  void guarded(const std::string& prop, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(prop, std::numeric_limits<double>::quiet_NaN(), "<=", 0.0, false, 0, std::string("error: ") + e.what());
    }
  }

 private:
  void add(const std::string& prop, double worst, const char* rel, double bound, bool pass, std::size_t n,
           std::string detail) {
    out_.results.push_back(PropertyResult{name_, prop, pass && !std::isnan(worst), worst, rel, bound, n,
                                          std::move(detail)});
  }

  std::string name_;
  const VerifyOptions& opt_;
  VerifyReport& out_;
};

std::vector<PointPair> pairs_near(const Point& c, Rng& rng, std::size_t n, double radius) {
  std::vector<PointPair> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point x = random_point_near(c, rng, radius);
    Point y = random_point_near(c, rng, radius);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

std::string errors_detail(const BatchResult& r) {
  if (r.errors.empty()) return {};
  return std::to_string(r.errors.size()) + " items failed, first: " + r.errors.front().message;
}

// -------------------------------------------------------------------------
// geometry

std::vector<Manifold> geometry_instances() {
  return {Manifold::euclidean(3), Manifold::hyperboloid(2), Manifold::hyperboloid(5), Manifold::spd(2),
          Manifold::spd(3), Manifold::product({Manifold::euclidean(1), Manifold::hyperboloid(2)})};
}

void geometry_suite(Suite& s) {
  const auto& o = s.options();
  for (const Manifold& m : geometry_instances()) {
    const std::string tag = "[" + m.tag() + "]";
    {
      Rng rng = s.rng("round_trip" + tag);
      // Both points within 5 of the origin, so every pair is within 10.
      const auto pairs = pairs_near(m.origin(), rng, 1000, 5.0);
      const BatchResult r = round_trip_errors(pairs, o.execution, o.threads);
      const BatchSummary sum = summarize(r);
      s.at_most("round_trip" + tag, sum.failures ? std::numeric_limits<double>::quiet_NaN() : sum.max, 1e-8,
                pairs.size(), errors_detail(r));
    }
    std::vector<PointTriple> tris;
    {
      Rng rng = s.rng("triangles" + tag);
      for (int i = 0; i < 1000; ++i)
        tris.push_back({random_point(m, rng, 3.0), random_point(m, rng, 3.0), random_point(m, rng, 3.0)});
    }
    if (m.kind() == ManifoldKind::Euclidean) {
      const BatchSummary a = summarize(cosine_law_slacks(tris, o.execution, o.threads));
      s.at_most("flat_law_of_cosines" + tag, std::max(std::abs(a.min), std::abs(a.max)), 1e-9, tris.size());
      continue;
    }
    {
      const BatchResult r = comparison_residuals(tris, o.execution, o.threads);
      s.at_least("comparison_triangle" + tag, summarize(r).min, -1e-9, tris.size(), errors_detail(r));
    }
    {
      const BatchResult r = cosine_law_slacks(tris, o.execution, o.threads);
      s.at_least("law_of_cosines" + tag, summarize(r).min, -1e-9, tris.size(), errors_detail(r));
    }
    {
      Rng rng = s.rng("distance_convexity" + tag);
      std::vector<GeodesicPair> geos;
      for (int i = 0; i < 500; ++i)
        geos.push_back({random_point(m, rng, 3.0), random_point(m, rng, 3.0), random_point(m, rng, 3.0),
                        random_point(m, rng, 3.0)});
      const std::vector<double> grid = unit_grid(21);
      const BatchResult r = distance_convexity_slacks(geos, grid, o.execution, o.threads);
      s.at_least("distance_convexity" + tag, summarize(r).min, -1e-9, geos.size(), errors_detail(r));
    }
    if (m.kind() == ManifoldKind::Product) {
      Rng rng = s.rng("product_log" + tag);
      double worst = 0.0;
      for (int i = 0; i < 200; ++i) {
        const Point p = random_point(m, rng, 3.0);
        const Point q = random_point(m, rng, 3.0);
        const TangentVector v = log_map(p, q);
        for (std::size_t f = 0; f < m.factors().size(); ++f) {
          const TangentVector fv = log_map(m.factor_point(p, f), m.factor_point(q, f));
          worst = std::max(worst, (m.factor_tangent(v, f).components() - fv.components()).norm());
        }
      }
      s.at_most("product_log_identity" + tag, worst, 1e-12, 200);
    }
  }
}

// -------------------------------------------------------------------------
// fields

struct NamedField {
  std::string name;
  VectorField field;
  Point center;
  double radius;
  /// Matrix of a Euclidean linear field, when the (I + lambda Q)^{-1} oracle applies.
  std::optional<Eigen::MatrixXd> linear;
};

std::vector<NamedField> shipped_fields() {
  std::vector<NamedField> out;
  const Manifold e1 = Manifold::euclidean(1);
  const Manifold e2 = Manifold::euclidean(2);
  const Manifold e3 = Manifold::euclidean(3);
  const Manifold h2 = Manifold::hyperboloid(2);
  const Manifold s2 = Manifold::spd(2);
  for (const std::string id : {"euclid_quad", "euclid_linear3", "hyp_distance", "hyp_frechet", "spd_karcher2",
                               "saddle_bilinear", "saddle_quadratic", "saddle_hyperbolic", "inclusion_euclid"}) {
    const ProblemInstance p = make_problem(id);
    std::optional<Eigen::MatrixXd> q;
    if (const auto* lin = std::get_if<LinearField>(&p.field->structure())) q = lin->matrix;
    out.push_back({p.field->name() + "@" + id, *p.field, *p.reference, 2.0, q});
  }
  {
    const Point a = h2.exp(h2.origin(), h2.tangent(h2.origin(), {0.0, -0.7, 0.4}));
    out.push_back({"distance_gradient_w3@H2", distance_gradient_field(a, 3.0), a, 2.0, std::nullopt});
  }
  {
    const Point a = s2.point({2.0, 0.5, 0.5, 1.0});
    out.push_back({"distance_gradient@SPD2", distance_gradient_field(a), a, 1.5, std::nullopt});
  }
  {
    Eigen::MatrixXd q(2, 2);
    q << 1, 0, 0, 0;
    out.push_back({"linear_psd_singular@E2", linear_field(q), e2.origin(), 2.0, q});
  }
  {
    Eigen::MatrixXd q(3, 3);
    q << 4, 1, 0, 1, 3, 1, 0, 1, 2;
    out.push_back({"linear_spd@E3", linear_field(q), e3.origin(), 2.0, q});
  }
  out.push_back({"zero@E1", zero_field(e1), e1.origin(), 2.0, Eigen::MatrixXd::Zero(1, 1)});
  return out;
}

std::string format_double_vec(const Vec& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_double(v[i]);
  return out + ")";
}

std::string witness_detail(const MonotonicityWitness& w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", w.slack);
  return "witness x = " + serialize_point(w.x) + ", y = " + serialize_point(w.y) + ", u = " +
         format_double_vec(w.u.components()) + ", v = " + format_double_vec(w.v.components()) + ", slack = " + buf;
}

void fields_suite(Suite& s) {
  const auto& o = s.options();
  std::vector<NamedField> fields = shipped_fields();
  if (o.negative_control) {
    const Manifold e2 = Manifold::euclidean(2);
    fields.push_back({"anti_monotone@E2", anti_monotone_field(2), e2.origin(), 2.0, std::nullopt});
  }
  const std::array<double, 3> lambdas{0.1, 1.0, 10.0};
  const std::vector<double> grid = unit_grid(11);
  for (const NamedField& nf : fields) {
    const std::string tag = "[" + nf.name + "]";
    s.guarded("monotone" + tag, [&] {
      Rng rng = s.rng("monotone" + tag);
      const auto pairs = pairs_near(nf.center, rng, 200, nf.radius);
      const MonotonicityReport rep = check_monotone(nf.field, pairs);
      s.at_least("monotone" + tag, rep.min_slack, -1e-9, rep.pairs_checked,
                 rep.pass || !rep.witness ? std::string{} : witness_detail(*rep.witness));
    });
    if (nf.name.rfind("anti_monotone", 0) == 0) continue;

    s.guarded("fixed_points" + tag, [&] {
      double worst = 0.0;
      std::size_t n = 0;
      for (double lambda : lambdas) {
        ResolventConfig cfg;
        cfg.lambda = lambda;
        for (const Point& z : nf.field.known_zeros()) {
          worst = std::max(worst, dist(resolvent(nf.field, cfg, z).point, z));
          ++n;
        }
      }
      s.at_most("fixed_points" + tag, worst, 1e-8, n);
    });

    for (double lambda : lambdas) {
      char lt[128];
      std::snprintf(lt, sizeof lt, "[%s,lambda=%g]", nf.name.c_str(), lambda);
      const std::string ltag = lt;
      s.guarded("firm_nonexpansive" + ltag, [&] {
        Rng rng = s.rng("firm_nonexpansive" + ltag);
        const auto pairs = pairs_near(nf.center, rng, 100, nf.radius);
        ResolventConfig cfg;
        cfg.lambda = lambda;
        const VectorField& a = nf.field;
        const PointMap j = [&a, cfg](const Point& x) { return resolvent(a, cfg, x).point; };
        const BatchResult r = firm_nonexpansive_increases(j, pairs, grid, o.execution, o.threads);
        const BatchSummary sum = summarize(r);
        s.at_most("firm_nonexpansive" + ltag, sum.failures ? std::numeric_limits<double>::quiet_NaN() : sum.max,
                  1e-9, pairs.size(), errors_detail(r));
      });
      if (nf.linear) {
        s.guarded("linear_oracle" + ltag, [&] {
          Rng rng = s.rng("linear_oracle" + ltag);
          const Eigen::MatrixXd q = *nf.linear;
          const auto n = q.rows();
          const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) + lambda * q;
          ResolventConfig cfg;
          cfg.lambda = lambda;
          double worst = 0.0;
          for (int i = 0; i < 50; ++i) {
            const Point x = random_point_near(nf.center, rng, 3.0);
            const Vec want = lhs.colPivHouseholderQr().solve(x.coords());
            worst = std::max(worst, (resolvent(nf.field, cfg, x).point.coords() - want).norm());
          }
          s.at_most("linear_oracle" + ltag, worst, 1e-8, 50);
        });
      }
    }
  }
}

// -------------------------------------------------------------------------
// equilibrium

struct NamedBifunction {
  std::string name;
  Bifunction f;
  Point center;
  double radius;
};

std::vector<NamedBifunction> shipped_bifunctions() {
  std::vector<NamedBifunction> out;
  for (const std::string id : {"euclid_quad", "euclid_linear3", "hyp_distance", "hyp_frechet", "spd_karcher2",
                               "saddle_quadratic", "saddle_hyperbolic", "ep_euclid", "ep_hyperbolic"}) {
    const ProblemInstance p = make_problem(id);
    out.push_back({p.bifunction->name() + "@" + id, *p.bifunction, *p.reference, 2.0});
  }
  const Manifold e2 = Manifold::euclidean(2);
  out.push_back({"zero@E2", zero_bifunction(e2), e2.origin(), 2.0});
  return out;
}

/// Riemannian gradient descent from `start`. Armijo backtracking on the
/// value while the gradient is large; near the minimizer values stop
/// resolving progress, so steps are accepted on a decrease of the gradient
/// norm instead.
Point descend(const std::function<double(const Point&)>& f, const std::function<TangentVector(const Point&)>& grad,
              const Point& start, double gtol) {
  Point y = start;
  double step = 1.0;
  TangentVector gr = grad(y);
  double gn = norm(gr);
  for (int it = 0; it < 100000 && gn > gtol; ++it) {
    const double fy = f(y);
    step = std::min(1.0, step * 2.0);
    while (true) {
      const Point trial = exp_map(y, gr * (-step));
      const TangentVector gt = grad(trial);
      const double gtn = norm(gt);
      const bool ok = gn > 1e-4 ? f(trial) <= fy - 0.5 * step * gn * gn : gtn < gn;
      if (ok || step < 1e-16) {
        y = trial;
        gr = gt;
        gn = gtn;
        break;
      }
      step *= 0.5;
    }
  }
  return y;
}

/// argmin_y r g(y) + d^2(y, x)/2.
Point prox_by_descent(const ConvexFunction& g, double r, const Point& x) {
  return descend(
      [&](const Point& y) {
        const double d = dist(y, x);
        return r * g(y) + 0.5 * d * d;
      },
      [&](const Point& y) { return g.subgradients(y).front() * r - log_map(y, x); }, x, 1e-13);
}

void equilibrium_suite(Suite& s) {
  const auto& o = s.options();
  const std::vector<double> grid = unit_grid(11);
  for (const NamedBifunction& nb : shipped_bifunctions()) {
    const std::string tag = "[" + nb.name + "]";
    s.guarded("assumptions" + tag, [&] {
      Rng rng = s.rng("assumptions" + tag);
      std::vector<Point> samples;
      for (int i = 0; i < 60; ++i) samples.push_back(random_point_near(nb.center, rng, nb.radius));
      const AssumptionReport rep = check_assumptions(nb.f, samples);
      char buf[160];
      std::snprintf(buf, sizeof buf, "A1 min %.3e, A2 max %.3e, A4 min %.3e; A3 A5 A6 declared", rep.a1_min,
                    rep.a2_max, rep.a4_min);
      s.expect("assumptions" + tag, rep.pass(), samples.size(), buf);
    });
    s.guarded("firm_nonexpansive" + tag, [&] {
      Rng rng = s.rng("firm_nonexpansive" + tag);
      const auto pairs = pairs_near(nb.center, rng, 100, nb.radius);
      const Bifunction& f = nb.f;
      const PointMap t = [&f](const Point& x) { return resolvent_T(f, {}, x).point; };
      const BatchResult r = firm_nonexpansive_increases(t, pairs, grid, o.execution, o.threads);
      const BatchSummary sum = summarize(r);
      s.at_most("firm_nonexpansive" + tag, sum.failures ? std::numeric_limits<double>::quiet_NaN() : sum.max, 1e-9,
                pairs.size(), errors_detail(r));
    });
    s.guarded("fixed_points" + tag, [&] {
      double worst = 0.0;
      std::size_t n = 0;
      std::vector<Point> eq = nb.f.known_equilibria();
      if (eq.empty()) eq.push_back(nb.center);
      for (double r : {0.1, 1.0, 10.0}) {
        EquilibriumResolventConfig cfg;
        cfg.r = r;
        for (const Point& z : eq) {
          worst = std::max(worst, dist(resolvent_T(nb.f, cfg, z).point, z));
          ++n;
        }
      }
      s.at_most("fixed_points" + tag, worst, 1e-8, n);
    });
    s.guarded("vi_certificate" + tag, [&] {
      Rng rng = s.rng("vi_certificate" + tag);
      double worst = std::numeric_limits<double>::infinity();
      std::size_t probes = 0;
      for (int i = 0; i < 20; ++i) {
        const Point x = random_point_near(nb.center, rng, nb.radius);
        const Point z = resolvent_T(nb.f, {}, x).point;
        const ViCertificate c = certify_resolvent_T(nb.f, 1.0, x, z, rng);
        worst = std::min(worst, c.min_value);
        probes += c.probes;
      }
      s.at_least("vi_certificate" + tag, worst, -1e-9, probes);
    });
    if (const auto* cd = std::get_if<ConvexDifference>(&nb.f.structure())) {
      s.guarded("prox_oracle" + tag, [&] {
        Rng rng = s.rng("prox_oracle" + tag);
        double worst = 0.0;
        for (double r : {0.5, 1.0, 4.0}) {
          EquilibriumResolventConfig cfg;
          cfg.r = r;
          for (int i = 0; i < 10; ++i) {
            const Point x = random_point_near(nb.center, rng, nb.radius);
            worst = std::max(worst, dist(resolvent_T(nb.f, cfg, x).point, prox_by_descent(*cd->function, r, x)));
          }
        }
        s.at_most("prox_oracle" + tag, worst, 1e-8, 30);
      });
    }
  }
}

// -------------------------------------------------------------------------
// splitting

void splitting_suite(Suite& s) {
  const StepSchedule def = StepSchedule::defaults();
  s.expect("default_schedule_valid", validate_schedule(def, 10000).pass, 10001);
  s.guarded("out_of_bounds_schedule_rejected", [&] {
    const ProblemInstance p = make_problem("euclid_quad");
    const StepSchedule bad = StepSchedule::constant(0.999, 0.5, 1.0, 1.0);
    bool rejected = false;
    try {
      run(p, bad, StoppingRule{});
    } catch (const ScheduleViolation&) {
      rejected = true;
    }
    s.expect("out_of_bounds_schedule_rejected", rejected, 1);
  });

  for (const std::string id : {"euclid_quad", "euclid_linear3", "hyp_distance", "hyp_frechet", "spd_karcher2",
                               "saddle_quadratic", "saddle_hyperbolic"}) {
    const std::string tag = "[" + id + "]";
    s.guarded("run" + tag, [&] {
      const ProblemInstance p = make_problem(id);
      const IterationTrace t = run(p, def, StoppingRule{});
      const FejerReport f = fejer_diagnostics(t, p, *p.reference);
      const std::size_t n = static_cast<std::size_t>(t.steps());
      s.at_most("fejer" + tag, f.max_violation, 1e-9, n);
      s.at_most("composite_descent" + tag, f.composite_max_violation, 1e-8, n);
      s.at_most("terminal_step" + tag, f.final_step, 1e-6, n);
      s.at_most("terminal_y_gap" + tag, f.final_y_gap, 1e-6, n);
      s.at_most("final_distance" + tag, dist(t.final_point(), *p.reference), 1e-5, n,
                "termination " + to_string(t.termination));
    });
  }

  s.guarded("contraction_recurrence[euclid_quad]", [&] {
    const ProblemInstance p = make_problem("euclid_quad");
    StoppingRule stop;
    stop.max_iter = 5;
    const IterationTrace t = run(p, def, stop);
    double worst = 0.0;
    for (const IterationRecord& r : t.records)
      worst = std::max(worst, std::abs(r.dx_ref - 8.0 * std::pow(0.6875, static_cast<double>(r.n))));
    s.at_most("contraction_recurrence[euclid_quad]", worst, 1e-9, t.records.size());
  });

  s.guarded("relaxed_ppa_oracle[euclid_linear3]", [&] {
    const ProblemInstance base = make_problem("euclid_linear3");
    ProblemInstance p = base;
    p.bifunction.reset();
    const Eigen::MatrixXd q = std::get<LinearField>(p.field->structure()).matrix;
    const StepSchedule sched{Sequence::relaxing(0.4, 0.3), Sequence::constant(0.5), Sequence::alternating(1.0, 0.5),
                             Sequence::constant(1.0), ScheduleBounds{}};
    StoppingRule stop;
    stop.max_iter = 50;
    stop.step_tol.reset();
    RunOptions opts;
    opts.algorithm = Algorithm::InclusionOnly;
    const IterationTrace t = run(p, sched, stop, opts);
    Vec x = p.x0.coords();
    double worst = 0.0;
    for (const IterationRecord& r : t.records) {
      worst = std::max(worst, (r.x.coords() - x).norm());
      const double lambda = sched.lambda(r.n);
      const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(3, 3) + lambda * q;
      const Vec u = lhs.fullPivLu().solve(x);
      x = x + sched.alpha(r.n) * (u - x);
    }
    s.at_most("relaxed_ppa_oracle[euclid_linear3]", worst, 1e-10, t.records.size());
  });

  for (const std::string id : {"ep_euclid", "ep_hyperbolic", "saddle_bilinear", "inclusion_euclid"}) {
    const std::string tag = "[" + id + "]";
    s.guarded("specialization_run" + tag, [&] {
      const ProblemInstance p = make_problem(id);
      RunOptions opts;
      opts.algorithm = natural_algorithm(p);
      const IterationTrace t = run(p, def, StoppingRule{}, opts);
      const FejerReport f = fejer_diagnostics(t, p, *p.reference);
      s.at_most("fejer" + tag, f.max_violation, 1e-9, static_cast<std::size_t>(t.steps()));
      s.at_most("final_distance" + tag, dist(t.final_point(), *p.reference), 1e-5,
                static_cast<std::size_t>(t.steps()), to_string(opts.algorithm));
    });
  }

  s.guarded("deterministic_trace", [&] {
    const ProblemInstance p = make_problem("hyp_frechet");
    const IterationTrace a = run(p, def, StoppingRule{});
    const IterationTrace b = run(p, def, StoppingRule{});
    bool same = a.records.size() == b.records.size();
    for (std::size_t i = 0; same && i < a.records.size(); ++i) same = a.records[i].x == b.records[i].x;
    s.expect("deterministic_trace", same, a.records.size());
  });
}

// -------------------------------------------------------------------------
// apps

struct NamedProgram {
  std::string name;
  ConvexProgram prog;
};

std::vector<NamedProgram> shipped_programs() {
  const std::vector<Point> h = hyperbolic_frechet_anchors();
  const std::vector<Point> k = spd_karcher_anchors();
  const std::vector<double> wh(h.size(), 1.0 / static_cast<double>(h.size()));
  const Manifold e2 = Manifold::euclidean(2);
  Eigen::MatrixXd q(2, 2);
  q << 2, 1, 1, 1;
  return {
      {"frechet@H2", ConvexProgram(weighted_half_squared_distances(h, wh, frechet_mean_fixed_point(h, wh)))},
      {"karcher@SPD2", ConvexProgram(weighted_half_squared_distances(k, {0.5, 0.5}, Manifold::spd(2).point({2, 0, 0, 2})))},
      {"norm@E2", ConvexProgram(euclidean_norm(2))},
      {"quadratic@E2", ConvexProgram(euclidean_quadratic(q, Eigen::Vector2d(1.0, -1.0)))},
  };
}

/// Weighted Frechet mean by geodesic gradient descent with line search.
Point frechet_by_descent(std::span<const Point> anchors, std::span<const double> w, const Point& start) {
  return descend(
      [&](const Point& x) {
        double v = 0.0;
        for (std::size_t i = 0; i < anchors.size(); ++i) {
          const double d = dist(x, anchors[i]);
          v += 0.5 * w[i] * d * d;
        }
        return v;
      },
      [&](const Point& x) {
        TangentVector g = x.manifold().zero(x);
        for (std::size_t i = 0; i < anchors.size(); ++i) g = g - log_map(x, anchors[i]) * w[i];
        return g;
      },
      start, 1e-12);
}

double factor_slack(const Point& x, const Point& y, const TangentVector& u, const TangentVector& v) {
  return -inner(v, log_map(y, x)) - inner(u, log_map(x, y));
}

void apps_suite(Suite& s) {
  const StepSchedule def = StepSchedule::defaults();
  for (const NamedProgram& np : shipped_programs()) {
    const std::string tag = "[" + np.name + "]";
    s.guarded("subgradient_inequality" + tag, [&] {
      Rng rng = s.rng("subgradient_inequality" + tag);
      const ProgramCheck c = check_program(np.prog, rng, 200);
      s.at_least("subgradient_inequality" + tag, std::min(c.subgradient_min, c.convexity_min), -1e-9, 200,
                 c.pass ? std::string{} : "witness " + serialize_point(c.witness->first) + " / " +
                                              serialize_point(c.witness->second));
    });
    s.guarded("subdifferential_monotone" + tag, [&] {
      Rng rng = s.rng("subdifferential_monotone" + tag);
      const VectorField a = subdifferential_field(np.prog);
      const auto pairs = pairs_near(np.prog.known_minimizers().front(), rng, 200, 2.0);
      s.at_least("subdifferential_monotone" + tag, check_monotone(a, pairs).min_slack, -1e-9, pairs.size());
    });
    s.guarded("minimizer_zero_equivalence" + tag, [&] {
      Rng rng = s.rng("minimizer_zero_equivalence" + tag);
      const VectorField a = subdifferential_field(np.prog);
      const ConvexFunction& g = *np.prog.objective;
      std::vector<Point> tested{np.prog.known_minimizers().front()};
      for (int i = 0; i < 10; ++i) tested.push_back(random_point_near(tested.front(), rng, 1.5));
      std::size_t disagreements = 0;
      for (const Point& x : tested) {
        const bool zero = zero_residual(a, x) <= 1e-8;
        bool minimal = true;
        const double gx = g(x);
        for (int k = 0; k < 1000 && minimal; ++k) minimal = gx <= g(random_point_near(x, rng, 1.0)) + 1e-8;
        if (zero != minimal) ++disagreements;
      }
      s.at_most("minimizer_zero_equivalence" + tag, static_cast<double>(disagreements), 0.0, tested.size());
    });
  }

  s.guarded("frechet_mean[H2]", [&] {
    const std::vector<Point> anchors = hyperbolic_frechet_anchors();
    const std::vector<double> w(anchors.size(), 1.0 / static_cast<double>(anchors.size()));
    const ConvexProgram prog(weighted_half_squared_distances(anchors, w, frechet_mean_fixed_point(anchors, w)));
    const Point x0 = make_problem("hyp_frechet").x0;
    const IterationTrace t = solve_minimization(prog, convex_difference(*prog.objective), x0, def, StoppingRule{});
    const Point oracle = frechet_by_descent(anchors, w, anchors.front());
    s.at_most("frechet_mean[H2]", dist(t.final_point(), oracle), 1e-5, static_cast<std::size_t>(t.steps()));
  });

  s.guarded("karcher_mean[SPD2]", [&] {
    const std::vector<Point> anchors = spd_karcher_anchors();
    const std::vector<double> w{0.5, 0.5};
    const ConvexProgram prog(weighted_half_squared_distances(anchors, w));
    const Manifold m = Manifold::spd(2);
    const IterationTrace t =
        solve_minimization(prog, convex_difference(*prog.objective), m.point({3.0, 0.5, 0.5, 1.0}), def, StoppingRule{});
    // Commuting anchors: the mean is the entrywise geometric mean of the spectra.
    const double g = std::sqrt(1.0 * 4.0);
    const Point want = m.point({g, 0.0, 0.0, g});
    s.at_most("karcher_mean[SPD2]", dist(t.final_point(), want), 1e-6, static_cast<std::size_t>(t.steps()));
  });

  struct NamedSaddle {
    std::string name;
    SaddleProblem sp;
    std::optional<Bifunction> f;
    Point x0;
  };
  std::vector<NamedSaddle> saddles;
  {
    const SaddleProblem b = bilinear_saddle(1);
    saddles.push_back({"bilinear", b, std::nullopt, b.product().point({1.0, 1.0})});
    const Manifold e1 = Manifold::euclidean(1);
    const SaddleProblem q = distance_saddle(e1.point({1.0}), e1.point({2.0}));
    saddles.push_back({"separable_quadratic", q, std::nullopt, q.product().point({-3.0, 5.0})});
    const ProblemInstance hp = make_problem("saddle_hyperbolic");
    const Manifold h2 = Manifold::hyperboloid(2);
    const Point a = h2.exp(h2.origin(), h2.tangent(h2.origin(), {0.0, 0.2, 0.1}));
    const Point bb = h2.exp(h2.origin(), h2.tangent(h2.origin(), {0.0, 0.0, -0.5}));
    saddles.push_back({"distance@H2xH2", distance_saddle(a, bb), hp.bifunction, hp.x0});
  }
  for (const NamedSaddle& ns : saddles) {
    const std::string tag = "[" + ns.name + "]";
    s.guarded("saddle_solve" + tag, [&] {
      const IterationTrace t = solve_saddle(ns.sp, ns.f, ns.x0, def, StoppingRule{});
      const std::array<Point, 2> parts{ns.sp.known_saddle->first, ns.sp.known_saddle->second};
      const Point want = ns.sp.product().combine(parts);
      const double tol = ns.name == "bilinear" ? 1e-6 : 1e-5;
      s.at_most("saddle_solve" + tag, dist(t.final_point(), want), tol, static_cast<std::size_t>(t.steps()));
      Rng rng = s.rng("saddle_inequalities" + tag);
      const SaddleVerification v = verify_saddle(ns.sp, t.final_point(), rng);
      s.at_most("saddle_inequalities" + tag, std::max(v.left_max, v.right_max), 1e-6,
                static_cast<std::size_t>(v.probes));
    });
    s.guarded("saddle_singularity" + tag, [&] {
      Rng rng = s.rng("saddle_singularity" + tag);
      const VectorField v = saddle_field(ns.sp);
      const Point z = v.known_zeros().front();
      s.at_most("saddle_singularity_at_saddle" + tag, zero_residual(v, z), 1e-9, 1);
      double least = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 100; ++i) {
        std::uniform_real_distribution<double> len(1e-2, 1.0);
        const Point p = exp_map(z, random_direction(z, rng, len(rng)));
        least = std::min(least, zero_residual(v, p));
      }
      s.at_least("saddle_residual_off_saddle" + tag, least, 1e-4, 100);
    });
    s.guarded("saddle_monotone" + tag, [&] {
      Rng rng = s.rng("saddle_monotone" + tag);
      const VectorField v = saddle_field(ns.sp);
      const auto pairs = pairs_near(v.known_zeros().front(), rng, 200, 2.0);
      s.at_least("saddle_monotone" + tag, check_monotone(v, pairs).min_slack, -1e-9, pairs.size());
      if (ns.sp.m1.kind() != ManifoldKind::Euclidean) return;
      const Manifold m = ns.sp.product();
      double worst = 0.0;
      for (const auto& [p, q] : pairs) {
        const TangentVector up = v.evaluate(p).front();
        const TangentVector uq = v.evaluate(q).front();
        double parts = 0.0;
        for (std::size_t f = 0; f < 2; ++f)
          parts += factor_slack(m.factor_point(p, f), m.factor_point(q, f), m.factor_tangent(up, f),
                                m.factor_tangent(uq, f));
        worst = std::max(worst, std::abs(factor_slack(p, q, up, uq) - parts));
      }
      s.at_most("product_slack_additivity" + tag, worst, 1e-12, pairs.size());
    });
  }
}

}  // namespace

bool VerifyReport::pass() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const PropertyResult& r) { return !r.pass; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"geometry", "fields", "equilibrium", "splitting", "apps", "all"};
  return n;
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& options) {
  static const std::vector<std::pair<std::string, void (*)(Suite&)>> suites{
      {"geometry", geometry_suite}, {"fields", fields_suite},   {"equilibrium", equilibrium_suite},
      {"splitting", splitting_suite}, {"apps", apps_suite}};
  VerifyReport report;
  bool found = false;
  for (const auto& [name, fn] : suites) {
    if (suite != "all" && suite != name) continue;
    found = true;
    Suite s(name, options, report);
    fn(s);
  }
  if (!found) throw UnknownId("unknown suite '" + suite + "'");
  return report;
}

void print_report(const VerifyReport& report, std::ostream& os) {
  char buf[512];
  for (const PropertyResult& r : report.results) {
    std::snprintf(buf, sizeof buf, "%s %s.%s worst=%.6e %s %.1e n=%zu", r.pass ? "PASS" : "FAIL", r.suite.c_str(),
                  r.name.c_str(), r.worst, r.relation.c_str(), r.bound, r.samples);
    os << buf << '\n';
    if (!r.pass && !r.detail.empty()) os << "  " << r.detail << '\n';
  }
  os << (report.pass() ? "ALL PASS" : "FAILURES") << ' ' << report.results.size() - report.failures() << '/'
     << report.results.size() << '\n';
}

}  // namespace hsplit
