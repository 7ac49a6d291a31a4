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

#include "hsplit/convex_function.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "hsplit/errors.hpp"

namespace hsplit {

ConvexFunction half_squared_distance(const Point& anchor, double weight) {
  if (!(weight > 0.0)) throw InvalidArgument("half_squared_distance: weight must be positive");
  ConvexFunction g("half_sq_dist", anchor.manifold());
  g.value = [anchor, weight](const Point& x) {
    const double d = dist(x, anchor);
    return 0.5 * weight * d * d;
  };
  g.subgradients = [anchor, weight](const Point& x) {
    return std::vector<TangentVector>{log_map(x, anchor) * (-weight)};
  };
  // argmin (w/2) d^2(y,p) + d^2(y,x)/(2 lambda) sits on [x,p] at fraction lambda w / (1 + lambda w).
  g.prox = [anchor, weight](const Point& x, double lambda) {
    return geodesic_point(x, anchor, lambda * weight / (1.0 + lambda * weight));
  };
  g.anchors = {anchor};
  g.minimizers = {anchor};
  return g;
}

ConvexFunction weighted_half_squared_distances(std::vector<Point> anchors, std::vector<double> weights,
                                               std::optional<Point> minimizer) {
  if (anchors.empty() || anchors.size() != weights.size()) {
    throw InvalidArgument("weighted_half_squared_distances: anchors and weights must match and be nonempty");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidArgument("weighted_half_squared_distances: weights must be positive");
  }
  ConvexFunction g("frechet", anchors.front().manifold());
  g.value = [anchors, weights](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const double d = dist(x, anchors[i]);
      s += 0.5 * weights[i] * d * d;
    }
    return s;
  };
  g.subgradients = [anchors, weights](const Point& x) {
    TangentVector grad = x.manifold().zero(x);
    for (std::size_t i = 0; i < anchors.size(); ++i) grad = grad - log_map(x, anchors[i]) * weights[i];
    return std::vector<TangentVector>{grad};
  };
  if (anchors.size() == 1) {
    const Point p = anchors.front();
    const double w = weights.front();
    g.prox = [p, w](const Point& x, double lambda) { return geodesic_point(x, p, lambda * w / (1.0 + lambda * w)); };
  }
  g.anchors = anchors;
  if (minimizer) g.minimizers = {*minimizer};
  return g;
}

ConvexFunction euclidean_norm(int dim) {
  const Manifold m = Manifold::euclidean(dim);
  ConvexFunction g("norm", m);
  g.value = [](const Point& x) { return x.coords().norm(); };
  g.subgradients = [m](const Point& x) {
    const double n = x.coords().norm();
    if (n > 0.0) return std::vector<TangentVector>{m.tangent(x, x.coords() / n)};
    std::vector<TangentVector> out;
    for (int i = 0; i < m.ambient_size(); ++i) {
      out.push_back(m.tangent(x, -Eigen::VectorXd::Unit(m.ambient_size(), i)));
      out.push_back(m.tangent(x, Eigen::VectorXd::Unit(m.ambient_size(), i)));
    }
    return out;
  };
  g.contains = [](const Point& x, const TangentVector& s) {
    const double n = x.coords().norm();
    if (n > 0.0) return (s.components() - x.coords() / n).norm() <= 1e-12;
    return s.components().norm() <= 1.0 + 1e-12;
  };
  // Block soft-thresholding.
  g.prox = [m](const Point& x, double lambda) {
    const double n = x.coords().norm();
    if (n <= lambda) return m.origin();
    return m.point(x.coords() * (1.0 - lambda / n));
  };
  g.minimizers = {m.origin()};
  return g;
}

ConvexFunction linear_function(Eigen::VectorXd c) {
  const Manifold m = Manifold::euclidean(static_cast<int>(c.size()));
  ConvexFunction g("linear", m);
  g.value = [c](const Point& x) { return c.dot(x.coords()); };
  g.subgradients = [m, c](const Point& x) { return std::vector<TangentVector>{m.tangent(x, c)}; };
  g.prox = [m, c](const Point& x, double lambda) { return m.point(x.coords() - lambda * c); };
  if (c.isZero(0.0)) g.minimizers = {m.origin()};
  return g;
}

ConvexFunction euclidean_quadratic(Eigen::MatrixXd q, Eigen::VectorXd center) {
  if (q.rows() != q.cols() || q.rows() != center.size()) throw InvalidArgument("euclidean_quadratic: shape mismatch");
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidArgument("euclidean_quadratic: Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12) throw InvalidArgument("euclidean_quadratic: Q must be PSD");
  const Manifold m = Manifold::euclidean(static_cast<int>(center.size()));
  ConvexFunction g("quadratic", m);
  g.value = [q, center](const Point& x) {
    const Eigen::VectorXd d = x.coords() - center;
    return 0.5 * d.dot(q * d);
  };
  g.subgradients = [m, q, center](const Point& x) {
    return std::vector<TangentVector>{m.tangent(x, q * (x.coords() - center))};
  };
  g.prox = [m, q, center](const Point& x, double lambda) {
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(q.rows(), q.cols()) + lambda * q;
    return m.point(lhs.ldlt().solve(x.coords() + lambda * q * center));
  };
  g.anchors = {m.point(center)};
  g.minimizers = {m.point(center)};
  return g;
}

ConvexFunction zero_function(const Manifold& m) {
  ConvexFunction g("zero", m);
  g.value = [](const Point&) { return 0.0; };
  g.subgradients = [](const Point& x) { return std::vector<TangentVector>{x.manifold().zero(x)}; };
  g.prox = [](const Point& x, double) { return x; };
  return g;
}

double geodesic_convexity_slack(const std::function<double(const Point&)>& g, const Point& x, const Point& y,
                                std::span<const double> grid) {
  const double gx = g(x), gy = g(y);
  const TangentVector v = log_map(x, y);
  double worst = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    if (t <= 0.0 || t >= 1.0) continue;
    worst = std::min(worst, (1.0 - t) * gx + t * gy - g(exp_map(x, v * t)));
  }
  return worst;
}

}  // namespace hsplit
