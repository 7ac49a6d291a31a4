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

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hsplit {

/// n -> value, n = 0, 1, 2, ...
struct Sequence {
  std::function<double(long)> at;
  std::string description;

  double operator()(long n) const { return at(n); }

  static Sequence constant(double c);
  /// c + amp * (-1)^n
  static Sequence alternating(double c, double amp);
  /// c / (n + 1)
  static Sequence harmonic(double c);
  /// limit + amp / (n + 1)
  static Sequence relaxing(double limit, double amp);
  /// Parses "0.5", "const:0.5", "alt:c,amp", "harmonic:c" or "relax:limit,amp".
  static Sequence parse(const std::string& text);
};

/// Declared bounds: a <= alpha_n, beta_n <= b, lambda_min <= lambda_n <=
/// lambda_max, and r_n >= r_min for every n >= r_tail_start.
struct ScheduleBounds {
  double a = 0.01;
  double b = 0.99;
  double lambda_min = 0.01;
  double lambda_max = 100.0;
  double r_min = 0.01;
  long r_tail_start = 0;
};

struct StepSchedule {
  Sequence alpha;
  Sequence beta;
  Sequence lambda;
  Sequence r;
  ScheduleBounds bounds;

  static StepSchedule constant(double alpha, double beta, double lambda, double r, ScheduleBounds bounds = {});
  /// alpha = beta = 0.5, lambda = r = 1 under the default bounds.
  static StepSchedule defaults();
};

struct ScheduleViolationRecord {
  long index;
  /// "alpha", "beta", "lambda", "r", or "bounds" for malformed declarations.
  std::string parameter;
  /// "lower" or "upper".
  std::string side;
  double value;
};

struct ScheduleReport {
  bool pass = true;
  /// Earliest violation overall (ties broken alpha, beta, lambda, r).
  std::optional<ScheduleViolationRecord> first;
  /// Earliest violation of each (parameter, side) condition.
  std::vector<ScheduleViolationRecord> per_condition;
  /// min r_n over the checked tail.
  double r_tail_min = 0.0;

  std::optional<long> first_violation(const std::string& parameter, const std::string& side) const;
  std::string summary() const;
};

/// Checks the three schedule conditions for n = 0..horizon.
ScheduleReport validate_schedule(const StepSchedule& s, long horizon);

}  // namespace hsplit
