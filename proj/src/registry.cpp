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

#include "hsplit/registry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <sstream>

#include "hsplit/errors.hpp"

namespace hsplit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw InvalidArgument("bad number for " + what + ": '" + text + "'");
  return v;
}

const std::string& require(const ParamMap& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw InvalidArgument("missing parameter '" + key + "'");
  return it->second;
}

Eigen::MatrixXd require_square(const ParamMap& p, const Manifold& m) {
  if (m.kind() != ManifoldKind::Euclidean) throw InvalidArgument("linear fields need a Euclidean manifold");
  Eigen::MatrixXd q = parse_matrix(require(p, "matrix"));
  if (q.rows() != m.dim() || q.cols() != m.dim())
    throw InvalidArgument("matrix must be " + std::to_string(m.dim()) + " x " + std::to_string(m.dim()));
  return q;
}

}  // namespace

ParamMap sub_params(const ParamMap& all, const std::string& prefix) {
  ParamMap out;
  for (const auto& [k, v] : all)
    if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0) out.emplace(k.substr(prefix.size()), v);
  return out;
}

double param_double(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : to_double(it->second, key);
}

double param_double(const ParamMap& p, const std::string& key) { return to_double(require(p, key), key); }

Eigen::VectorXd parse_vector(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<double> vals;
  std::string tok;
  while (is >> tok) vals.push_back(to_double(tok, "vector entry"));
  if (vals.empty()) throw InvalidArgument("empty vector '" + text + "'");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
  std::vector<Eigen::VectorXd> rows;
  std::istringstream is(text);
  std::string row;
  while (std::getline(is, row, ';'))
    if (!trim(row).empty()) rows.push_back(parse_vector(row));
  if (rows.empty()) throw InvalidArgument("empty matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw InvalidArgument("ragged matrix '" + text + "'");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

Point parse_point_spec(const Manifold& m, const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("exp:", 0) == 0) {
    const Eigen::VectorXd c = parse_vector(t.substr(4));
    if (c.size() != m.dim()) throw InvalidArgument("exp: needs " + std::to_string(m.dim()) + " coefficients");
    const Point o = m.origin();
    const auto basis = m.tangent_basis(o);
    TangentVector v = m.zero(o);
    for (Eigen::Index i = 0; i < c.size(); ++i) v = v + basis[static_cast<std::size_t>(i)] * c[i];
    return m.exp(o, v);
  }
  return m.point(parse_vector(t));
}

const std::vector<std::string>& convex_function_kinds() {
  static const std::vector<std::string> k{"half_sq_dist", "frechet", "norm", "linear", "quadratic", "zero"};
  return k;
}

ConvexFunction make_convex_function(const std::string& kind, const Manifold& m, const ParamMap& p) {
  if (kind == "half_sq_dist") return half_squared_distance(parse_point_spec(m, require(p, "anchor")), param_double(p, "weight", 1.0));
  if (kind == "frechet") {
    std::vector<Point> anchors;
    std::istringstream is(require(p, "anchors"));
    std::string item;
    while (std::getline(is, item, '|')) anchors.push_back(parse_point_spec(m, item));
    std::vector<double> w;
    if (p.count("weights")) {
      const Eigen::VectorXd wv = parse_vector(p.at("weights"));
      w.assign(wv.data(), wv.data() + wv.size());
    } else {
      w.assign(anchors.size(), 1.0 / static_cast<double>(anchors.size()));
    }
    return weighted_half_squared_distances(std::move(anchors), std::move(w));
  }
  if (kind == "norm") {
    if (m.kind() != ManifoldKind::Euclidean) throw InvalidArgument("norm needs a Euclidean manifold");
    return euclidean_norm(m.dim());
  }
  if (kind == "linear") {
    if (m.kind() != ManifoldKind::Euclidean) throw InvalidArgument("linear needs a Euclidean manifold");
    const Eigen::VectorXd c = parse_vector(require(p, "c"));
    if (c.size() != m.dim()) throw InvalidArgument("c has the wrong length");
    return linear_function(c);
  }
  if (kind == "quadratic") {
    const Eigen::MatrixXd q = require_square(p, m);
    const Eigen::VectorXd c = p.count("center") ? parse_vector(p.at("center")) : Eigen::VectorXd::Zero(m.dim());
    if (c.size() != m.dim()) throw InvalidArgument("center has the wrong length");
    return euclidean_quadratic(q, c);
  }
  if (kind == "zero") return zero_function(m);
  throw UnknownId("unknown convex function '" + kind + "'");
}

const std::vector<std::string>& field_kinds() {
  static const std::vector<std::string> k{"distance_gradient", "linear_psd", "subdiff", "zero", "anti_monotone"};
  return k;
}

VectorField make_field(const std::string& kind, const Manifold& m, const ParamMap& p) {
  if (kind == "distance_gradient")
    return distance_gradient_field(parse_point_spec(m, require(p, "anchor")), param_double(p, "weight", 1.0));
  if (kind == "linear_psd") {
    const Eigen::MatrixXd q = require_square(p, m);
    const Eigen::MatrixXd sym = 0.5 * (q + q.transpose());
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() < -1e-12)
      throw InvalidArgument("linear_psd: symmetric part is not positive semidefinite");
    return linear_field(q);
  }
  if (kind == "subdiff") return subdifferential_of(make_convex_function(require(p, "function"), m, p));
  if (kind == "zero") return zero_field(m);
  if (kind == "anti_monotone") {
    if (m.kind() != ManifoldKind::Euclidean) throw InvalidArgument("anti_monotone needs a Euclidean manifold");
    return anti_monotone_field(m.dim());
  }
  throw UnknownId("unknown field '" + kind + "'");
}

const std::vector<std::string>& bifunction_kinds() {
  static const std::vector<std::string> k{"convex_difference", "field_induced", "zero"};
  return k;
}

Bifunction make_bifunction(const std::string& kind, const Manifold& m, const ParamMap& p) {
  if (kind == "convex_difference") return convex_difference(make_convex_function(require(p, "function"), m, p));
  if (kind == "field_induced") return field_induced(make_field(require(p, "field"), m, p));
  if (kind == "zero") return zero_bifunction(m);
  throw UnknownId("unknown bifunction '" + kind + "'");
}

ProblemInstance make_custom_problem(const ParamMap& cfg) {
  const Manifold m = parse_manifold_tag(require(cfg, "manifold"));
  ProblemInstance p{.id = cfg.count("id") ? cfg.at("id") : "custom",
                    .manifold = m,
                    .field = std::nullopt,
                    .bifunction = std::nullopt,
                    .reference = std::nullopt,
                    .x0 = parse_point_spec(m, require(cfg, "x0")),
                    .description = "configured problem",
                    .provenance = "user configuration"};
  if (cfg.count("field")) p.field = make_field(cfg.at("field"), m, sub_params(cfg, "field."));
  if (cfg.count("bifunction")) p.bifunction = make_bifunction(cfg.at("bifunction"), m, sub_params(cfg, "bifunction."));
  if (cfg.count("reference")) p.reference = parse_point_spec(m, cfg.at("reference"));
  p.validate();
  return p;
}

}  // namespace hsplit
