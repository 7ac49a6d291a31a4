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

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

#include "manifold_impl.hpp"

namespace hsplit::detail {
namespace {

using Matrix = Eigen::MatrixXd;

// Symmetric matrix function f applied through the eigendecomposition.
template <typename F>
Matrix spectral(const Matrix& s, F f) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Eigen::VectorXd mapped = eig.eigenvalues().unaryExpr(f);
  return eig.eigenvectors() * mapped.asDiagonal() * eig.eigenvectors().transpose();
}

Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// Affine-invariant metric <U,V>_P = tr(P^-1 U P^-1 V).
class Spd final : public ManifoldImpl {
 public:
  Spd(int k, const NumericPolicy& policy)
      : ManifoldImpl(ManifoldKind::SPD, k, k * (k + 1) / 2, k * k, "SPD" + std::to_string(k), policy),
        k_(k) {}

  std::string check_point(const Eigen::VectorXd& x) const override {
    const Matrix p = as_matrix(x);
    const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
    if ((p - p.transpose()).cwiseAbs().maxCoeff() > policy().spd_symmetry * scale) return "matrix is not symmetric";
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym(p), Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) return "matrix is not positive definite";
    return {};
  }

  Eigen::VectorXd project_point(const Eigen::VectorXd& x) const override {
    return flat(spectral(sym(as_matrix(x)), [](double l) { return std::max(l, 1e-300); }));
  }

  std::string check_tangent(const Eigen::VectorXd&, const Eigen::VectorXd& v) const override {
    const Matrix u = as_matrix(v);
    const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    if ((u - u.transpose()).cwiseAbs().maxCoeff() > policy().spd_symmetry * scale) {
      return "tangent matrix is not symmetric";
    }
    return {};
  }

  Eigen::VectorXd project_tangent(const Eigen::VectorXd&, const Eigen::VectorXd& v) const override {
    return flat(sym(as_matrix(v)));
  }

  Eigen::VectorXd origin() const override { return flat(Matrix::Identity(k_, k_)); }

  std::vector<Eigen::VectorXd> tangent_basis(const Eigen::VectorXd& x) const override {
    // P^{1/2} S P^{1/2} is orthonormal whenever S runs over an orthonormal
    // Frobenius basis of symmetric matrices.
    const Matrix root = spectral(as_matrix(x), [](double l) { return std::sqrt(l); });
    std::vector<Eigen::VectorXd> basis;
    for (int j = 0; j < k_; ++j) {
      for (int i = 0; i <= j; ++i) {
        Matrix s = Matrix::Zero(k_, k_);
        if (i == j) {
          s(i, i) = 1.0;
        } else {
          s(i, j) = s(j, i) = 1.0 / std::sqrt(2.0);
        }
        basis.push_back(flat(sym(root * s * root)));
      }
    }
    return basis;
  }

  Eigen::VectorXd exp(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const override {
    const Roots r = roots(as_matrix(x));
    const Matrix inner = sym(r.inv_sqrt * as_matrix(v) * r.inv_sqrt);
    const Matrix e = spectral(inner, [](double l) { return std::exp(l); });
    return flat(sym(r.sqrt * e * r.sqrt));
  }

  Eigen::VectorXd log(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
    const Roots r = roots(as_matrix(x));
    const Matrix whitened = sym(r.inv_sqrt * as_matrix(y) * r.inv_sqrt);
    const Matrix l = spectral(whitened, [](double s) { return std::log(s); });
    return flat(sym(r.sqrt * l * r.sqrt));
  }

  double dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const override {
    const Roots r = roots(as_matrix(x));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym(r.inv_sqrt * as_matrix(y) * r.inv_sqrt), Eigen::EigenvaluesOnly);
    return eig.eigenvalues().unaryExpr([](double s) { return std::log(s); }).norm();
  }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const override {
    Eigen::LLT<Matrix> llt(as_matrix(x));
    const Matrix a = llt.solve(as_matrix(u));
    const Matrix b = llt.solve(as_matrix(v));
    // tr(A B) without forming the product.
    return (a.transpose().cwiseProduct(b)).sum();
  }

 private:
  struct Roots {
    Matrix sqrt;
    Matrix inv_sqrt;
  };

  Roots roots(const Matrix& p) const {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym(p));
    const Eigen::VectorXd s = eig.eigenvalues().cwiseSqrt();
    const Matrix& q = eig.eigenvectors();
    return {q * s.asDiagonal() * q.transpose(), q * s.cwiseInverse().asDiagonal() * q.transpose()};
  }

  Matrix as_matrix(const Eigen::VectorXd& v) const { return Eigen::Map<const Matrix>(v.data(), k_, k_); }
  static Eigen::VectorXd flat(const Matrix& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size()); }

  int k_;
};

}  // namespace

std::shared_ptr<const ManifoldImpl> make_spd(int order, const NumericPolicy& policy) {
  return std::make_shared<Spd>(order, policy);
}

}  // namespace hsplit::detail
