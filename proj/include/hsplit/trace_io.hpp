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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hsplit/splitting.hpp"

namespace hsplit {

inline constexpr const char* kTraceHeader = "n,dx_step,dx_y,dx_z,dx_ref,res_A,res_F,wall_ms";

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// One row per record. Quantities undefined for a record (no step taken,
/// no reference) are written as nan.
void write_trace_csv(const IterationTrace& trace, std::ostream& os);

using MetaEntries = std::vector<std::pair<std::string, std::string>>;

/// key=value lines: problem metadata, schedule, tolerances, termination.
MetaEntries trace_metadata(const IterationTrace& trace, const ProblemInstance& p, const StepSchedule& s,
                           const StoppingRule& stop, const RunOptions& options);
void write_metadata(const MetaEntries& entries, std::ostream& os);

/// Python script plotting dx_step, dx_y and dx_ref of `csv_name` on a log scale.
std::string plot_script(const std::string& csv_name);

struct TraceFiles {
  std::filesystem::path csv;
  std::filesystem::path meta;
  std::filesystem::path plot;
};

/// Writes <stem>.csv, <stem>.meta and <stem>_plot.py into `dir`, creating it.
TraceFiles write_trace_files(const std::filesystem::path& dir, const std::string& stem, const IterationTrace& trace,
                             const MetaEntries& meta);

}  // namespace hsplit
