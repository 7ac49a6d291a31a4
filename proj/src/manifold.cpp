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

#include "hsplit/manifold.hpp"

#include <cmath>

#include "hsplit/errors.hpp"
#include "manifold_impl.hpp"

namespace hsplit {

namespace detail {

const std::vector<Manifold>& ManifoldImpl::factors() const {
  static const std::vector<Manifold> kNone;
  return kNone;
}

}  // namespace detail

namespace {

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw NonFiniteInput(std::string(what) + " has non-finite entries");
}

void require_same(const Manifold& a, const Manifold& b, const char* op) {
  if (a != b) {
    throw ManifoldMismatch(std::string(op) + ": " + a.tag() + " vs " + b.tag());
  }
}

void require_base(const Point& x, const TangentVector& v, const char* op) {
  require_same(x.manifold(), v.manifold(), op);
  if (!same_base(x, v.base())) throw BaseMismatch(std::string(op) + ": tangent vector attached elsewhere");
}

}  // namespace

Manifold Manifold::euclidean(int dim, const NumericPolicy& policy) {
  if (dim < 1) throw InvalidArgument("Euclidean dimension must be >= 1");
  return Manifold(detail::make_euclidean(dim, policy));
}

Manifold Manifold::hyperboloid(int dim, const NumericPolicy& policy) {
  if (dim < 1) throw InvalidArgument("hyperboloid dimension must be >= 1");
  return Manifold(detail::make_hyperboloid(dim, policy));
}

Manifold Manifold::spd(int order, const NumericPolicy& policy) {
  if (order < 1) throw InvalidArgument("SPD matrix order must be >= 1");
  return Manifold(detail::make_spd(order, policy));
}

Manifold Manifold::product(std::vector<Manifold> factors) {
  if (factors.size() < 2) throw InvalidArgument("a product needs at least two factors");
  return Manifold(detail::make_product(std::move(factors)));
}

ManifoldKind Manifold::kind() const { return impl_->kind(); }
int Manifold::parameter() const { return impl_->parameter(); }
int Manifold::dim() const { return impl_->dim(); }
int Manifold::ambient_size() const { return impl_->ambient(); }
const std::vector<Manifold>& Manifold::factors() const { return impl_->factors(); }
const std::string& Manifold::tag() const { return impl_->tag(); }
const NumericPolicy& Manifold::policy() const { return impl_->policy(); }

bool Manifold::operator==(const Manifold& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->tag() == other.impl_->tag();
}

Point Manifold::point(Eigen::VectorXd coords) const {
  if (coords.size() != ambient_size()) {
    throw InvalidArgument(tag() + ": expected " + std::to_string(ambient_size()) + " coordinates, got " +
                          std::to_string(coords.size()));
  }
  require_finite(coords, "point");
  if (auto why = impl_->check_point(coords); !why.empty()) throw InvalidArgument(tag() + ": " + why);
  return Point(*this, std::move(coords));
}

Point Manifold::point(std::initializer_list<double> coords) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return point(std::move(v));
}

Point Manifold::project(Eigen::VectorXd coords) const {
  if (coords.size() != ambient_size()) throw InvalidArgument(tag() + ": wrong coordinate count");
  require_finite(coords, "point");
  return Point(*this, impl_->project_point(coords));
}

Point Manifold::origin() const { return Point(*this, impl_->origin()); }

TangentVector Manifold::tangent(const Point& base, Eigen::VectorXd components) const {
  require_same(*this, base.manifold(), "tangent");
  if (components.size() != ambient_size()) throw InvalidArgument(tag() + ": wrong tangent size");
  require_finite(components, "tangent vector");
  if (auto why = impl_->check_tangent(base.coords(), components); !why.empty()) {
    throw InvalidArgument(tag() + ": " + why);
  }
  return TangentVector(base, std::move(components));
}

TangentVector Manifold::tangent(const Point& base, std::initializer_list<double> components) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(components.size()));
  Eigen::Index i = 0;
  for (double c : components) v[i++] = c;
  return tangent(base, std::move(v));
}

TangentVector Manifold::project_tangent(const Point& base, Eigen::VectorXd ambient) const {
  require_same(*this, base.manifold(), "project_tangent");
  if (ambient.size() != ambient_size()) throw InvalidArgument(tag() + ": wrong tangent size");
  require_finite(ambient, "tangent vector");
  return TangentVector(base, impl_->project_tangent(base.coords(), ambient));
}

TangentVector Manifold::zero(const Point& base) const {
  require_same(*this, base.manifold(), "zero");
  return TangentVector(base, Eigen::VectorXd::Zero(ambient_size()));
}

std::vector<TangentVector> Manifold::tangent_basis(const Point& base) const {
  require_same(*this, base.manifold(), "tangent_basis");
  std::vector<TangentVector> out;
  for (auto& e : impl_->tangent_basis(base.coords())) out.push_back(TangentVector(base, std::move(e)));
  return out;
}

Point Manifold::exp(const Point& x, const TangentVector& v) const {
  require_same(*this, x.manifold(), "exp");
  require_base(x, v, "exp");
  require_finite(v.components(), "tangent vector");
  if (v.is_zero()) return x;
  Eigen::VectorXd y = impl_->exp(x.coords(), v.components());
  if (!y.allFinite()) throw NonFiniteInput("exp produced non-finite coordinates");
  return Point(x.manifold(), std::move(y));
}

TangentVector Manifold::log(const Point& x, const Point& y) const {
  require_same(*this, x.manifold(), "log");
  require_same(*this, y.manifold(), "log");
  if (x.coords() == y.coords()) return zero(x);
  Eigen::VectorXd v = impl_->log(x.coords(), y.coords());
  if (!v.allFinite()) throw NonFiniteInput("log produced non-finite components");
  return TangentVector(x, std::move(v));
}

double Manifold::dist(const Point& x, const Point& y) const {
  require_same(*this, x.manifold(), "dist");
  require_same(*this, y.manifold(), "dist");
  if (x.coords() == y.coords()) return 0.0;
  return impl_->dist(x.coords(), y.coords());
}

double Manifold::inner(const TangentVector& u, const TangentVector& v) const {
  require_same(*this, u.manifold(), "inner");
  require_same(*this, v.manifold(), "inner");
  if (!same_base(u.base(), v.base())) throw BaseMismatch("inner: vectors at different base points");
  return impl_->inner(u.base().coords(), u.components(), v.components());
}

Point Manifold::factor_point(const Point& x, std::size_t i) const {
  require_same(*this, x.manifold(), "factor_point");
  const auto& fs = factors();
  if (i >= fs.size()) throw InvalidArgument("factor index out of range");
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < i; ++k) offset += fs[k].ambient_size();
  return Point(fs[i], x.coords().segment(offset, fs[i].ambient_size()));
}

TangentVector Manifold::factor_tangent(const TangentVector& v, std::size_t i) const {
  const auto& fs = factors();
  if (i >= fs.size()) throw InvalidArgument("factor index out of range");
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < i; ++k) offset += fs[k].ambient_size();
  return TangentVector(factor_point(v.base(), i), v.components().segment(offset, fs[i].ambient_size()));
}

Point Manifold::combine(std::span<const Point> parts) const {
  const auto& fs = factors();
  if (parts.size() != fs.size()) throw InvalidArgument("combine: wrong number of factor points");
  Eigen::VectorXd c(ambient_size());
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    require_same(fs[k], parts[k].manifold(), "combine");
    c.segment(offset, fs[k].ambient_size()) = parts[k].coords();
    offset += fs[k].ambient_size();
  }
  return Point(*this, std::move(c));
}

TangentVector Manifold::combine(const Point& base, std::span<const TangentVector> parts) const {
  const auto& fs = factors();
  if (parts.size() != fs.size()) throw InvalidArgument("combine: wrong number of factor tangents");
  Eigen::VectorXd c(ambient_size());
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!same_base(factor_point(base, k), parts[k].base())) throw BaseMismatch("combine: factor base mismatch");
    c.segment(offset, fs[k].ambient_size()) = parts[k].components();
    offset += fs[k].ambient_size();
  }
  return TangentVector(base, std::move(c));
}

bool Point::operator==(const Point& other) const {
  return manifold_ == other.manifold_ && coords_ == other.coords_;
}

TangentVector TangentVector::operator+(const TangentVector& other) const {
  if (manifold() != other.manifold() || !same_base(base_, other.base_)) {
    throw BaseMismatch("tangent addition at different base points");
  }
  return TangentVector(base_, components_ + other.components_);
}

TangentVector TangentVector::operator-(const TangentVector& other) const { return *this + (-other); }
TangentVector TangentVector::operator-() const { return TangentVector(base_, -components_); }
TangentVector TangentVector::operator*(double s) const { return TangentVector(base_, components_ * s); }

bool same_base(const Point& a, const Point& b) {
  if (a.manifold() != b.manifold()) return false;
  if (a.coords() == b.coords()) return true;
  const double scale = std::max(1.0, a.coords().cwiseAbs().maxCoeff());
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff() <= a.manifold().policy().base_match * scale;
}

Point exp_map(const Point& x, const TangentVector& v) { return x.manifold().exp(x, v); }
TangentVector log_map(const Point& x, const Point& y) { return x.manifold().log(x, y); }
double dist(const Point& x, const Point& y) { return x.manifold().dist(x, y); }
double inner(const TangentVector& u, const TangentVector& v) { return u.manifold().inner(u, v); }
double norm(const TangentVector& v) { return std::sqrt(std::max(0.0, inner(v, v))); }

Point geodesic_point(const Point& x, const Point& y, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("geodesic parameter outside [0,1]");
  if (x.manifold() != y.manifold()) throw ManifoldMismatch("geodesic_point: " + x.manifold().tag() + " vs " + y.manifold().tag());
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  return exp_map(x, log_map(x, y) * t);
}

}  // namespace hsplit
