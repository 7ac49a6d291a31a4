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
#include <iosfwd>
#include <string>
#include <vector>

#include "hsplit/parallel.hpp"

namespace hsplit {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  /// Worst observed value of the checked quantity.
  double worst = 0.0;
  /// "<=" or ">=": pass iff worst relation bound.
  std::string relation;
  double bound = 0.0;
  std::size_t samples = 0;
  /// Witness or failure description; empty when there is nothing to add.
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  Execution execution = Execution::Serial;
  int threads = 0;
  /// Adds the anti-monotone field to the fields suite.
  bool negative_control = false;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool pass() const;
  std::size_t failures() const;
};

/// geometry, fields, equilibrium, splitting, apps, all.
const std::vector<std::string>& suite_names();

/// Runs the named suite; throws UnknownId for other names. Each property
/// draws from its own generator seeded by (seed, suite, property name), so
/// results do not depend on which other suites run.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& options = {});

/// One fixed-format line per property plus a final tally.
void print_report(const VerifyReport& report, std::ostream& os);

}  // namespace hsplit
