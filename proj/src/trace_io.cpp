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

#include "hsplit/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "hsplit/errors.hpp"

namespace hsplit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const IterationTrace& trace, std::ostream& os) {
  os << kTraceHeader << '\n';
  for (const IterationRecord& r : trace.records) {
    os << r.n << ',' << format_double(r.dx_step) << ',' << format_double(r.dx_y) << ',' << format_double(r.dx_z)
       << ',' << format_double(r.dx_ref) << ',' << format_double(r.res_a) << ',' << format_double(r.res_f) << ','
       << format_double(r.wall_ms) << '\n';
  }
}

MetaEntries trace_metadata(const IterationTrace& trace, const ProblemInstance& p, const StepSchedule& s,
                           const StoppingRule& stop, const RunOptions& options) {
  MetaEntries m;
  m.emplace_back("problem", p.id);
  m.emplace_back("manifold", p.manifold.tag());
  m.emplace_back("description", p.description);
  m.emplace_back("provenance", p.provenance);
  m.emplace_back("reference", p.reference ? serialize_point(*p.reference) : "none");
  m.emplace_back("x0", serialize_point(p.x0));
  m.emplace_back("algorithm", to_string(trace.algorithm));
  m.emplace_back("alpha", s.alpha.description);
  m.emplace_back("beta", s.beta.description);
  m.emplace_back("lambda", s.lambda.description);
  m.emplace_back("r", s.r.description);
  m.emplace_back("bound_a", format_double(s.bounds.a));
  m.emplace_back("bound_b", format_double(s.bounds.b));
  m.emplace_back("bound_lambda_min", format_double(s.bounds.lambda_min));
  m.emplace_back("bound_lambda_max", format_double(s.bounds.lambda_max));
  m.emplace_back("bound_r_min", format_double(s.bounds.r_min));
  m.emplace_back("bound_r_tail_start", std::to_string(s.bounds.r_tail_start));
  m.emplace_back("max_iter", std::to_string(stop.max_iter));
  m.emplace_back("step_tol", stop.step_tol ? format_double(*stop.step_tol) : "none");
  m.emplace_back("ref_tol", stop.ref_tol ? format_double(*stop.ref_tol) : "none");
  m.emplace_back("inner_tol", format_double(options.inner.inner_tol));
  m.emplace_back("inner_max_iter", std::to_string(options.inner.inner_max_iter));
  m.emplace_back("inner_budget_factor", format_double(options.inner.budget_factor));
  m.emplace_back("inner_tol_floor", format_double(options.inner.tol_floor));
  m.emplace_back("inner_adaptive", options.inner.adaptive ? "true" : "false");
  m.emplace_back("steps", std::to_string(trace.steps()));
  m.emplace_back("final_point", trace.records.empty() ? "none" : serialize_point(trace.final_point()));
  m.emplace_back("termination", to_string(trace.termination));
  m.emplace_back("message", trace.message);
  return m;
}

void write_metadata(const MetaEntries& entries, std::ostream& os) {
  for (const auto& [k, v] : entries) {
    std::string flat = v;
    for (char& c : flat)
      if (c == '\n') c = ' ';
    os << k << '=' << flat << '\n';
  }
}

std::string plot_script(const std::string& csv_name) {
  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "# Plots the consecutive-step, y-gap and reference distances of one trace.\n";
  s += "import csv\nimport math\nimport pathlib\nimport sys\n\n";
  s += "import matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n";
  s += "here = pathlib.Path(__file__).resolve().parent\n";
  s += "path = here / \"" + csv_name + "\"\n";
  s += "rows = list(csv.DictReader(open(path)))\n";
  s += "fig, ax = plt.subplots()\n";
  s += "for key in (\"dx_step\", \"dx_y\", \"dx_ref\"):\n";
  s += "    pts = [(int(r[\"n\"]), float(r[key])) for r in rows]\n";
  s += "    pts = [(n, v) for n, v in pts if math.isfinite(v) and v > 0]\n";
  s += "    if pts:\n";
  s += "        ax.semilogy(*zip(*pts), label=key)\n";
  s += "ax.set_xlabel(\"n\")\nax.legend()\n";
  s += "out = sys.argv[1] if len(sys.argv) > 1 else str(path.with_suffix(\".png\"))\n";
  s += "fig.savefig(out)\n";
  return s;
}

TraceFiles write_trace_files(const std::filesystem::path& dir, const std::string& stem, const IterationTrace& trace,
                             const MetaEntries& meta) {
  std::filesystem::create_directories(dir);
  TraceFiles files{dir / (stem + ".csv"), dir / (stem + ".meta"), dir / (stem + "_plot.py")};
  auto open = [](const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + p.string());
    return os;
  };
  {
    auto os = open(files.csv);
    write_trace_csv(trace, os);
  }
  {
    auto os = open(files.meta);
    write_metadata(meta, os);
  }
  {
    auto os = open(files.plot);
    os << plot_script(files.csv.filename().string());
  }
  return files;
}

}  // namespace hsplit
