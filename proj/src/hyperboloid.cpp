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

#include <cmath>

#include "manifold_impl.hpp"

namespace hsplit::detail {
namespace {

double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.tail(a.size() - 1).dot(b.tail(b.size() - 1)) - a[0] * b[0];
}

// Lorentz model of hyperbolic n-space, curvature -1.
class Hyperboloid final : public ManifoldImpl {
 public:
  Hyperboloid(int n, const NumericPolicy& policy)
      : ManifoldImpl(ManifoldKind::Hyperboloid, n, n, n + 1, "H" + std::to_string(n), policy) {}

  std::string check_point(const Eigen::VectorXd& x) const override {
    if (x[0] <= 0.0) return "hyperboloid point needs x0 > 0";
    const double defect = std::abs(minkowski(x, x) + 1.0);
    if (defect > policy().hyperboloid_constraint * std::max(1.0, x[0] * x[0])) {
      return "Minkowski self-product deviates from -1 by " + std::to_string(defect);
    }
    return {};
  }

  Eigen::VectorXd project_point(const Eigen::VectorXd& x) const override {
    // Lift the spatial part; exact on the upper sheet and robust to any x0.
    Eigen::VectorXd y = x;
    y[0] = std::sqrt(1.0 + y.tail(y.size() - 1).squaredNorm());
    return y;
  }

  std::string check_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    const double defect = std::abs(minkowski(x, v));
    if (defect > policy().hyperboloid_tangent * std::max(1.0, x.norm() * v.norm())) {
      return "tangent vector not Minkowski-orthogonal to its base (defect " + std::to_string(defect) + ")";
    }
    return {};
  }

  Eigen::VectorXd project_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    return v + minkowski(x, v) * x;
  }

  Eigen::VectorXd origin() const override { return Eigen::VectorXd::Unit(ambient(), 0); }

  std::vector<Eigen::VectorXd> tangent_basis(const Eigen::VectorXd& x) const override {
    std::vector<Eigen::VectorXd> basis;
    for (int i = 1; i < ambient(); ++i) {
      Eigen::VectorXd e = project_tangent(x, Eigen::VectorXd::Unit(ambient(), i));
      for (const auto& b : basis) e -= minkowski(e, b) * b;
      e /= std::sqrt(minkowski(e, e));
      basis.push_back(std::move(e));
    }
    return basis;
  }

  // exp and log run in the frame of the boost B_x taking the origin to x.
  // Far from the origin, ambient tangent coordinates are inflated by up to
  // 2 x0 relative to their length; the origin frame keeps them at scale.
  Eigen::VectorXd exp(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    const Eigen::VectorXd w = unboost(x, v).tail(v.size() - 1);
    const double t = w.norm();
    const double sinhc = t < policy().sinhc_series_cutoff ? 1.0 + t * t / 6.0 : std::sinh(t) / t;
    Eigen::VectorXd step(ambient());
    step[0] = 2.0 * std::sinh(0.5 * t) * std::sinh(0.5 * t);
    step.tail(w.size()) = sinhc * w;
    return renormalize(x + boost(x, step));
  }

  Eigen::VectorXd log(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
    const Eigen::VectorXd diff = y - x;
    const Eigen::VectorXd ws = unboost(x, diff).tail(diff.size() - 1);
    const double wn = ws.norm();
    if (wn == 0.0) return Eigen::VectorXd::Zero(ambient());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(ambient());
    w.tail(ws.size()) = (arcosh1p(excess(diff)) / wn) * ws;
    return boost(x, w);
  }

  double dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
    return arcosh1p(excess(y - x));
  }

  double inner(const Eigen::VectorXd&, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const override {
    return minkowski(u, v);
  }

 private:
  // e = cosh d(x,y) - 1 = <y-x, y-x>_L / 2, free of the cancellation in -<x,y>_L - 1.
  static double excess(const Eigen::VectorXd& diff) { return std::max(0.0, 0.5 * minkowski(diff, diff)); }

  // arcosh(1 + e).
  double arcosh1p(double e) const {
    if (e < policy().arcosh_series_cutoff) {
      return std::sqrt(2.0 * e) * (1.0 - e / 12.0 + 3.0 * e * e / 160.0);
    }
    return std::log1p(e + std::sqrt(e * (2.0 + e)));
  }

  // Re-lift x0 from the spatial part. Rescaling by the Minkowski defect
  // instead would turn normal rounding error into tangential displacement.
  // B_x a with B_x the boost taking the origin to x.
  static Eigen::VectorXd boost(const Eigen::VectorXd& x, const Eigen::VectorXd& a) {
    const auto n = x.size() - 1;
    const auto xs = x.tail(n);
    const double xa = xs.dot(a.tail(n));
    Eigen::VectorXd out(x.size());
    out[0] = x[0] * a[0] + xa;
    out.tail(n) = a.tail(n) + (a[0] + xa / (1.0 + x[0])) * xs;
    return out;
  }

  static Eigen::VectorXd unboost(const Eigen::VectorXd& x, const Eigen::VectorXd& a) {
    const auto n = x.size() - 1;
    const auto xs = x.tail(n);
    const double xa = xs.dot(a.tail(n));
    Eigen::VectorXd out(x.size());
    out[0] = x[0] * a[0] - xa;
    out.tail(n) = a.tail(n) + (xa / (1.0 + x[0]) - a[0]) * xs;
    return out;
  }

  static Eigen::VectorXd renormalize(Eigen::VectorXd y) {
    y[0] = std::sqrt(1.0 + y.tail(y.size() - 1).squaredNorm());
    return y;
  }
};

}  // namespace

std::shared_ptr<const ManifoldImpl> make_hyperboloid(int dim, const NumericPolicy& policy) {
  return std::make_shared<Hyperboloid>(dim, policy);
}

}  // namespace hsplit::detail
