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

#include "manifold_impl.hpp"

namespace hsplit::detail {
namespace {

class Euclidean final : public ManifoldImpl {
 public:
  Euclidean(int n, const NumericPolicy& policy)
      : ManifoldImpl(ManifoldKind::Euclidean, n, n, n, "E" + std::to_string(n), policy) {}

  std::string check_point(const Eigen::VectorXd&) const override { return {}; }
  Eigen::VectorXd project_point(const Eigen::VectorXd& x) const override { return x; }
  std::string check_tangent(const Eigen::VectorXd&, const Eigen::VectorXd&) const override { return {}; }
  Eigen::VectorXd project_tangent(const Eigen::VectorXd&, const Eigen::VectorXd& v) const override { return v; }
  Eigen::VectorXd origin() const override { return Eigen::VectorXd::Zero(ambient()); }

  std::vector<Eigen::VectorXd> tangent_basis(const Eigen::VectorXd&) const override {
    std::vector<Eigen::VectorXd> basis;
    for (int i = 0; i < ambient(); ++i) basis.push_back(Eigen::VectorXd::Unit(ambient(), i));
    return basis;
  }

  Eigen::VectorXd exp(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override { return x + v; }
  Eigen::VectorXd log(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override { return y - x; }
  double dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override { return (y - x).norm(); }
  double inner(const Eigen::VectorXd&, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const override {
    return u.dot(v);
  }
};

}  // namespace

std::shared_ptr<const ManifoldImpl> make_euclidean(int dim, const NumericPolicy& policy) {
  return std::make_shared<Euclidean>(dim, policy);
}

}  // namespace hsplit::detail
