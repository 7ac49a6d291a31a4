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

namespace hsplit {

/// Tolerances used when validating points and tangent vectors and when
/// stabilizing the hyperboloid formulas. One record per manifold handle.
struct NumericPolicy {
  /// |<x,x>_L + 1| for hyperboloid points, relative to max(1, x0^2).
  double hyperboloid_constraint = 1e-10;
  /// |<x,v>_L| for hyperboloid tangents, relative to max(1, |x|*|v|).
  double hyperboloid_tangent = 1e-10;
  /// Relative asymmetry allowed for SPD points and tangents.
  double spd_symmetry = 1e-12;
  /// Below this excess e = cosh(d) - 1 the series arcosh(1+e) is used.
  double arcosh_series_cutoff = 1e-7;
  /// Below this argument sinh(t)/t is evaluated by its series.
  double sinhc_series_cutoff = 1e-5;
  /// Relative coordinate drift tolerated when matching a tangent's base.
  double base_match = 1e-12;
};

}  // namespace hsplit
