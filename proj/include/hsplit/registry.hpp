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

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hsplit/convex_function.hpp"
#include "hsplit/equilibrium.hpp"
#include "hsplit/fields.hpp"
#include "hsplit/splitting.hpp"

namespace hsplit {

/// String parameters of one registry entry, keys without their prefix.
using ParamMap = std::map<std::string, std::string>;

/// Entries of `all` whose key starts with `prefix`, with the prefix removed.
ParamMap sub_params(const ParamMap& all, const std::string& prefix);

double param_double(const ParamMap& p, const std::string& key, double fallback);
double param_double(const ParamMap& p, const std::string& key);
/// Whitespace or comma separated numbers.
Eigen::VectorXd parse_vector(const std::string& text);
/// Rows separated by ';'.
Eigen::MatrixXd parse_matrix(const std::string& text);
/// Ambient coordinates, or "exp: v1 ... vd" for exp at the origin of the
/// given coefficients on the orthonormal basis there.
Point parse_point_spec(const Manifold& m, const std::string& text);

/// Convex functions: half_sq_dist (anchor, weight), frechet (anchors
/// separated by '|', weights), norm, linear (c), quadratic (matrix, center), zero.
const std::vector<std::string>& convex_function_kinds();
ConvexFunction make_convex_function(const std::string& kind, const Manifold& m, const ParamMap& p);

/// Fields: distance_gradient (anchor, weight), linear_psd (matrix; symmetric
/// part checked PSD), subdiff (function plus its parameters), zero,
/// anti_monotone.
const std::vector<std::string>& field_kinds();
VectorField make_field(const std::string& kind, const Manifold& m, const ParamMap& p);

/// Bifunctions: convex_difference (function plus its parameters),
/// field_induced (field plus its parameters), zero.
const std::vector<std::string>& bifunction_kinds();
Bifunction make_bifunction(const std::string& kind, const Manifold& m, const ParamMap& p);

/// Problem from flat config keys: manifold, x0, reference, field, field.*,
/// bifunction, bifunction.*. Throws InvalidArgument on malformed entries
/// and UnknownId on unknown kinds.
ProblemInstance make_custom_problem(const ParamMap& cfg);

}  // namespace hsplit
