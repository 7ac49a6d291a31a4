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

std::string product_tag(const std::vector<Manifold>& factors) {
  std::string tag = "P(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) tag += ",";
    tag += factors[i].tag();
  }
  return tag + ")";
}

int sum_dims(const std::vector<Manifold>& fs) {
  int d = 0;
  for (const auto& f : fs) d += f.dim();
  return d;
}

int sum_ambient(const std::vector<Manifold>& fs) {
  int d = 0;
  for (const auto& f : fs) d += f.ambient_size();
  return d;
}

// Riemannian product: metric, exp and log act factorwise.
class Product final : public ManifoldImpl {
 public:
  explicit Product(std::vector<Manifold> factors)
      : ManifoldImpl(ManifoldKind::Product, 0, sum_dims(factors), sum_ambient(factors), product_tag(factors),
                     factors.front().policy()),
        factors_(std::move(factors)) {
    Eigen::Index off = 0;
    for (const auto& f : factors_) {
      offsets_.push_back(off);
      off += f.ambient_size();
    }
  }

  const std::vector<Manifold>& factors() const override { return factors_; }

  std::string check_point(const Eigen::VectorXd& x) const override {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (auto why = f(i).check_point(seg(x, i)); !why.empty()) return "factor " + std::to_string(i) + ": " + why;
    }
    return {};
  }

  Eigen::VectorXd project_point(const Eigen::VectorXd& x) const override {
    return map1(x, [&](std::size_t i, const Eigen::VectorXd& xi) { return f(i).project_point(xi); });
  }

  std::string check_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (auto why = f(i).check_tangent(seg(x, i), seg(v, i)); !why.empty()) {
        return "factor " + std::to_string(i) + ": " + why;
      }
    }
    return {};
  }

  Eigen::VectorXd project_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    Eigen::VectorXd out(ambient());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.segment(offsets_[i], size(i)) = f(i).project_tangent(seg(x, i), seg(v, i));
    return out;
  }

  Eigen::VectorXd origin() const override {
    Eigen::VectorXd out(ambient());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.segment(offsets_[i], size(i)) = f(i).origin();
    return out;
  }

  std::vector<Eigen::VectorXd> tangent_basis(const Eigen::VectorXd& x) const override {
    std::vector<Eigen::VectorXd> basis;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (const auto& e : f(i).tangent_basis(seg(x, i))) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(ambient());
        full.segment(offsets_[i], size(i)) = e;
        basis.push_back(std::move(full));
      }
    }
    return basis;
  }

  Eigen::VectorXd exp(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    Eigen::VectorXd out(ambient());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Eigen::VectorXd vi = seg(v, i);
      out.segment(offsets_[i], size(i)) = vi.isZero(0.0) ? seg(x, i) : f(i).exp(seg(x, i), vi);
    }
    return out;
  }

  Eigen::VectorXd log(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
    Eigen::VectorXd out(ambient());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Eigen::VectorXd xi = seg(x, i), yi = seg(y, i);
      out.segment(offsets_[i], size(i)) = xi == yi ? Eigen::VectorXd::Zero(size(i)) : f(i).log(xi, yi);
    }
    return out;
  }

  double dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
    double sq = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Eigen::VectorXd xi = seg(x, i), yi = seg(y, i);
      if (xi == yi) continue;
      const double d = f(i).dist(xi, yi);
      sq += d * d;
    }
    return std::sqrt(sq);
  }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += f(i).inner(seg(x, i), seg(u, i), seg(v, i));
    return s;
  }

 private:
  const ManifoldImpl& f(std::size_t i) const { return factors_[i].impl(); }
  Eigen::Index size(std::size_t i) const { return factors_[i].ambient_size(); }
  Eigen::VectorXd seg(const Eigen::VectorXd& v, std::size_t i) const { return v.segment(offsets_[i], size(i)); }

  template <typename Fn>
  Eigen::VectorXd map1(const Eigen::VectorXd& x, Fn fn) const {
    Eigen::VectorXd out(ambient());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.segment(offsets_[i], size(i)) = fn(i, seg(x, i));
    return out;
  }

  std::vector<Manifold> factors_;
  std::vector<Eigen::Index> offsets_;
};

}  // namespace

std::shared_ptr<const ManifoldImpl> make_product(std::vector<Manifold> factors) {
  return std::make_shared<Product>(std::move(factors));
}

}  // namespace hsplit::detail
