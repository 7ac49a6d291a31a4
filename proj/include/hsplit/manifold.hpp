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

#include <array>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hsplit/numeric_policy.hpp"

namespace hsplit {

enum class ManifoldKind { Euclidean, Hyperboloid, SPD, Product };

class Point;
class TangentVector;

namespace detail {
class ManifoldImpl;
}

/// Cheap-to-copy handle to an immutable Hadamard manifold instance.
///
/// Supported instances:
///  - Euclidean(n): R^n, flat.
///  - Hyperboloid(n): the Lorentz model {x in R^{n+1} : <x,x>_L = -1, x0 > 0}
///    with curvature -1, stored in its n+1 ambient coordinates.
///  - SPD(k): k x k symmetric positive definite matrices with the
///    affine-invariant metric, stored column-major as k*k coordinates.
///  - Product(M1, ..., Mm): coordinates are the concatenation of the factors'.
///
/// Tangent vectors live in the ambient coordinates of their base point.
class Manifold {
 public:
  static Manifold euclidean(int dim, const NumericPolicy& policy = {});
  static Manifold hyperboloid(int dim, const NumericPolicy& policy = {});
  static Manifold spd(int order, const NumericPolicy& policy = {});
  static Manifold product(std::vector<Manifold> factors);

  ManifoldKind kind() const;
  /// n for Euclidean/Hyperboloid, the matrix order for SPD, 0 for products.
  int parameter() const;
  /// Intrinsic dimension.
  int dim() const;
  int ambient_size() const;
  const std::vector<Manifold>& factors() const;
  /// Short tag used in serialized points: E2, H2, SPD3, P(E1,H2).
  const std::string& tag() const;
  const NumericPolicy& policy() const;

  bool operator==(const Manifold& other) const;
  bool operator!=(const Manifold& other) const { return !(*this == other); }

  /// Validated construction; throws InvalidArgument on constraint violation.
  Point point(Eigen::VectorXd coords) const;
  Point point(std::initializer_list<double> coords) const;
  /// Re-projects onto the constraint set instead of rejecting.
  Point project(Eigen::VectorXd coords) const;
  /// Distinguished point: 0, (1,0,...,0), I, or the tuple of factor origins.
  Point origin() const;

  TangentVector tangent(const Point& base, Eigen::VectorXd components) const;
  TangentVector tangent(const Point& base, std::initializer_list<double> components) const;
  TangentVector project_tangent(const Point& base, Eigen::VectorXd ambient) const;
  TangentVector zero(const Point& base) const;
  /// Orthonormal basis of T_x M in the Riemannian metric.
  std::vector<TangentVector> tangent_basis(const Point& base) const;

  Point exp(const Point& x, const TangentVector& v) const;
  TangentVector log(const Point& x, const Point& y) const;
  double dist(const Point& x, const Point& y) const;
  double inner(const TangentVector& u, const TangentVector& v) const;

  /// Product helpers; i indexes factors().
  Point factor_point(const Point& x, std::size_t i) const;
  TangentVector factor_tangent(const TangentVector& v, std::size_t i) const;
  Point combine(std::span<const Point> parts) const;
  TangentVector combine(const Point& base, std::span<const TangentVector> parts) const;

  const detail::ManifoldImpl& impl() const { return *impl_; }

 private:
  explicit Manifold(std::shared_ptr<const detail::ManifoldImpl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const detail::ManifoldImpl> impl_;
};

/// A point of a manifold instance. Immutable value.
class Point {
 public:
  const Manifold& manifold() const { return manifold_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](Eigen::Index i) const { return coords_[i]; }
  Eigen::Index size() const { return coords_.size(); }

  /// Exact coordinate equality on the same manifold.
  bool operator==(const Point& other) const;

 private:
  friend class Manifold;
  Point(Manifold m, Eigen::VectorXd coords) : manifold_(std::move(m)), coords_(std::move(coords)) {}

  Manifold manifold_;
  Eigen::VectorXd coords_;
};

/// A vector of T_x M, stored in the ambient chart of its base point x.
class TangentVector {
 public:
  const Point& base() const { return base_; }
  const Manifold& manifold() const { return base_.manifold(); }
  const Eigen::VectorXd& components() const { return components_; }
  double operator[](Eigen::Index i) const { return components_[i]; }

  TangentVector operator+(const TangentVector& other) const;
  TangentVector operator-(const TangentVector& other) const;
  TangentVector operator-() const;
  TangentVector operator*(double s) const;
  friend TangentVector operator*(double s, const TangentVector& v) { return v * s; }

  bool is_zero() const { return components_.isZero(0.0); }

 private:
  friend class Manifold;
  TangentVector(Point base, Eigen::VectorXd components)
      : base_(std::move(base)), components_(std::move(components)) {}

  Point base_;
  Eigen::VectorXd components_;
};

/// True when `a` and `b` are the same point up to the policy's base-match drift.
bool same_base(const Point& a, const Point& b);

Point exp_map(const Point& x, const TangentVector& v);
TangentVector log_map(const Point& x, const Point& y);
double dist(const Point& x, const Point& y);
double inner(const TangentVector& u, const TangentVector& v);
double norm(const TangentVector& v);
/// gamma(t) = exp_x(t log_x y) on the unique minimal geodesic; exact at t = 0, 1.
Point geodesic_point(const Point& x, const Point& y, double t);

// ---------------------------------------------------------------------------
// Comparison geometry

struct GeodesicTriangleReport {
  std::array<Point, 3> vertices;
  /// side_lengths[i] = d(p_i, p_{i+1}), indices mod 3.
  std::array<double, 3> side_lengths;
  std::array<Eigen::Vector2d, 3> comparison_vertices;
  /// residual[i] = <log_{p_i} p_{i+1}, log_{p_i} p_{i+2}> minus the same
  /// inner product in the planar comparison triangle. Nonnegative on
  /// Hadamard manifolds, zero in flat space.
  std::array<double, 3> cosine_law_residuals;

  double min_residual() const;
};

GeodesicTriangleReport comparison_triangle(const Point& p1, const Point& p2, const Point& p3);

/// For each cyclic rotation i:
///   d^2(p_{i+2}, p_i) - [d^2(p_i,p_{i+1}) + d^2(p_{i+1},p_{i+2})
///                        - 2 <log_{p_{i+1}} p_i, log_{p_{i+1}} p_{i+2}>],
/// which is >= 0 on Hadamard manifolds.
std::array<double, 3> law_of_cosines_slacks(const Point& p1, const Point& p2, const Point& p3);

/// min over the grid of (1-t) d(a1,a2) + t d(b1,b2) - d(gamma1(t), gamma2(t)),
/// with gamma1 from a1 to b1 and gamma2 from a2 to b2.
double distance_convexity_slack(const Point& a1, const Point& b1, const Point& a2, const Point& b2,
                                std::span<const double> grid);

/// Uniform grid of `n` points on [0, 1].
std::vector<double> unit_grid(int n);

// ---------------------------------------------------------------------------
// Serialization: "<tag> c0 c1 ..." with round-trip exact formatting.

std::string serialize_point(const Point& x);
Point parse_point(const std::string& text);
Manifold parse_manifold_tag(const std::string& tag);

}  // namespace hsplit
