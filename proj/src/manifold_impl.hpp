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

#include <memory>
#include <string>
#include <vector>

#include "hsplit/manifold.hpp"

namespace hsplit::detail {

/// Coordinate-level geometry of one manifold instance. Inputs are assumed
/// validated by the Manifold handle.
class ManifoldImpl {
 public:
  ManifoldImpl(ManifoldKind kind, int parameter, int dim, int ambient, std::string tag,
               NumericPolicy policy)
      : kind_(kind), parameter_(parameter), dim_(dim), ambient_(ambient),
        tag_(std::move(tag)), policy_(policy) {}
  virtual ~ManifoldImpl() = default;

  ManifoldKind kind() const { return kind_; }
  int parameter() const { return parameter_; }
  int dim() const { return dim_; }
  int ambient() const { return ambient_; }
  const std::string& tag() const { return tag_; }
  const NumericPolicy& policy() const { return policy_; }
  virtual const std::vector<Manifold>& factors() const;

  /// Empty string when valid, otherwise the reason.
  virtual std::string check_point(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd project_point(const Eigen::VectorXd& x) const = 0;
  virtual std::string check_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const = 0;
  virtual Eigen::VectorXd project_tangent(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const = 0;
  virtual Eigen::VectorXd origin() const = 0;
  virtual std::vector<Eigen::VectorXd> tangent_basis(const Eigen::VectorXd& x) const = 0;

  virtual Eigen::VectorXd exp(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const = 0;
  virtual Eigen::VectorXd log(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const = 0;
  virtual double dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const = 0;
  virtual double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& v) const = 0;

 private:
  ManifoldKind kind_;
  int parameter_;
  int dim_;
  int ambient_;
  std::string tag_;
  NumericPolicy policy_;
};

std::shared_ptr<const ManifoldImpl> make_euclidean(int dim, const NumericPolicy& policy);
std::shared_ptr<const ManifoldImpl> make_hyperboloid(int dim, const NumericPolicy& policy);
std::shared_ptr<const ManifoldImpl> make_spd(int order, const NumericPolicy& policy);
std::shared_ptr<const ManifoldImpl> make_product(std::vector<Manifold> factors);

}  // namespace hsplit::detail
