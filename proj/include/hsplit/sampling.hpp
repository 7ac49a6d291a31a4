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

#include <cstdint>
#include <random>

#include "hsplit/manifold.hpp"

namespace hsplit {

using Rng = std::mt19937_64;

/// Isotropic Gaussian tangent vector with per-axis standard deviation `scale`.
TangentVector random_tangent(const Point& base, Rng& rng, double scale = 1.0);
/// Uniformly distributed direction with norm exactly `length`.
TangentVector random_direction(const Point& base, Rng& rng, double length = 1.0);
/// exp_o(v) from the origin o with |v| uniform in [0, radius] and uniform direction.
Point random_point(const Manifold& m, Rng& rng, double radius = 2.0);
/// Point at distance uniform in [0, radius] from `center`.
Point random_point_near(const Point& center, Rng& rng, double radius);

}  // namespace hsplit
