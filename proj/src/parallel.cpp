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

#include "hsplit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <omp.h>

namespace hsplit {

BatchResult map_batch(std::size_t n, const std::function<double(std::size_t)>& f, Execution exec, int threads) {
  BatchResult out;
  out.values.assign(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> messages(n);
  std::vector<char> failed(n, 0);
  auto body = [&](std::size_t i) {
    try {
      out.values[i] = f(i);
    } catch (const std::exception& e) {
      failed[i] = 1;
      messages[i] = e.what();
    }
  };
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
    for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (failed[i]) out.errors.push_back({i, std::move(messages[i])});
  return out;
}

BatchSummary summarize(const BatchResult& r) {
  BatchSummary s;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const double v = r.values[i];
    if (std::isnan(v)) {
      ++s.failures;
      continue;
    }
    ++s.count;
    if (v < s.min) {
      s.min = v;
      s.argmin = i;
    }
    if (v > s.max) {
      s.max = v;
      s.argmax = i;
    }
  }
  return s;
}

BatchResult round_trip_errors(std::span<const PointPair> pairs, Execution exec, int threads) {
  return map_batch(
      pairs.size(),
      [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        const TangentVector v = log_map(x, y);
        const double forward = dist(exp_map(x, v), y);
        const double backward = norm(log_map(x, exp_map(x, v)) - v);
        return std::max(forward, backward);
      },
      exec, threads);
}

BatchResult comparison_residuals(std::span<const PointTriple> tris, Execution exec, int threads) {
  return map_batch(
      tris.size(),
      [&](std::size_t i) { return comparison_triangle(tris[i][0], tris[i][1], tris[i][2]).min_residual(); }, exec,
      threads);
}

BatchResult cosine_law_slacks(std::span<const PointTriple> tris, Execution exec, int threads) {
  return map_batch(
      tris.size(),
      [&](std::size_t i) {
        const auto s = law_of_cosines_slacks(tris[i][0], tris[i][1], tris[i][2]);
        return *std::min_element(s.begin(), s.end());
      },
      exec, threads);
}

BatchResult distance_convexity_slacks(std::span<const GeodesicPair> geos, std::span<const double> grid, Execution exec,
                                      int threads) {
  return map_batch(
      geos.size(),
      [&](std::size_t i) {
        const auto& g = geos[i];
        return distance_convexity_slack(g[0], g[1], g[2], g[3], grid);
      },
      exec, threads);
}

BatchResult monotonicity_slacks(const VectorField& a, std::span<const PointPair> pairs, Execution exec, int threads) {
  return map_batch(
      pairs.size(),
      [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        const auto ax = a.evaluate(x);
        const auto ay = a.evaluate(y);
        const TangentVector lxy = log_map(x, y);
        const TangentVector lyx = log_map(y, x);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& u : ax)
          for (const auto& v : ay) worst = std::min(worst, -inner(v, lyx) - inner(u, lxy));
        return worst;
      },
      exec, threads);
}

BatchResult firm_nonexpansive_increases(const PointMap& t, std::span<const PointPair> pairs,
                                        std::span<const double> grid, Execution exec, int threads) {
  return map_batch(
      pairs.size(),
      [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        return check_firmly_nonexpansive(t, x, y, grid).max_increase;
      },
      exec, threads);
}

}  // namespace hsplit
