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

// Serial reference versus OpenMP kernels on the batch checks used by verify.

#include <benchmark/benchmark.h>

#include <vector>

#include "hsplit/fields.hpp"
#include "hsplit/parallel.hpp"
#include "hsplit/sampling.hpp"

namespace {

using namespace hsplit;

std::vector<PointPair> pairs_on(const Manifold& m, std::size_t n) {
  Rng rng(1234);
  std::vector<PointPair> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(random_point(m, rng, 5.0), random_point(m, rng, 5.0));
  return out;
}

std::vector<PointTriple> triangles_on(const Manifold& m, std::size_t n) {
  Rng rng(4321);
  std::vector<PointTriple> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({random_point(m, rng, 3.0), random_point(m, rng, 3.0), random_point(m, rng, 3.0)});
  return out;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void set_label(benchmark::State& state) { state.SetLabel(state.range(1) == 0 ? "serial" : "parallel"); }

void BM_RoundTripHyperboloid(benchmark::State& state) {
  const auto pairs = pairs_on(Manifold::hyperboloid(5), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(round_trip_errors(pairs, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  set_label(state);
}

void BM_RoundTripSpd(benchmark::State& state) {
  const auto pairs = pairs_on(Manifold::spd(3), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(round_trip_errors(pairs, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  set_label(state);
}

void BM_CosineLawSpd(benchmark::State& state) {
  const auto tris = triangles_on(Manifold::spd(3), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cosine_law_slacks(tris, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  set_label(state);
}

void BM_FirmNonexpansiveResolvent(benchmark::State& state) {
  const Manifold h = Manifold::hyperboloid(2);
  Rng rng(99);
  const VectorField a = distance_gradient_field(random_point(h, rng, 1.0), 2.0);
  const ResolventConfig cfg{};
  const PointMap t = [a, cfg](const Point& x) { return resolvent(a, cfg, x).point; };
  const auto pairs = pairs_on(h, static_cast<std::size_t>(state.range(0)));
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(firm_nonexpansive_increases(t, pairs, grid, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  set_label(state);
}

}  // namespace

BENCHMARK(BM_RoundTripHyperboloid)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundTripSpd)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosineLawSpd)->ArgsProduct({{1000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirmNonexpansiveResolvent)->ArgsProduct({{100}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
