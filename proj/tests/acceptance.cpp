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

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hsplit/cli.hpp"
#include "hsplit/errors.hpp"
#include "hsplit/problems.hpp"
#include "hsplit/schedule.hpp"
#include "hsplit/splitting.hpp"
#include "hsplit/verify.hpp"

using namespace hsplit;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string prop_key(const PropertyResult& r) { return r.name.substr(0, r.name.find('[')); }

/// Requires that every result whose name starts with one of `props` passes,
/// and that each appears at least `min_count` times.
void require_props(Verdict& v, const VerifyReport& rep, const std::vector<std::string>& props, std::size_t min_count) {
  for (const std::string& p : props) {
    std::size_t seen = 0;
    for (const PropertyResult& r : rep.results) {
      if (prop_key(r) != p) continue;
      ++seen;
      v.require(r.pass, r.suite + "." + r.name + " worst=" + std::to_string(r.worst));
    }
    v.require(seen >= min_count, p + " seen " + std::to_string(seen) + " < " + std::to_string(min_count));
  }
}

const PropertyResult* find(const VerifyReport& rep, const std::string& name) {
  for (const PropertyResult& r : rep.results)
    if (r.name == name) return &r;
  return nullptr;
}

void require_named(Verdict& v, const VerifyReport& rep, const std::string& name) {
  const PropertyResult* r = find(rep, name);
  v.require(r != nullptr, name + " missing");
  if (r) v.require(r->pass, name + " worst=" + std::to_string(r->worst));
}

VerifyReport timed_suite(const std::string& suite, double& secs, bool negative = false) {
  VerifyOptions o;
  o.seed = kSeed;
  o.negative_control = negative;
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport r = run_suite(suite, o);
  secs = seconds_since(t0);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

Verdict geometry() {
  Verdict v;
  double secs = 0;
  const VerifyReport rep = timed_suite("geometry", secs);
  require_props(v, rep, {"round_trip"}, 6);
  require_props(v, rep, {"law_of_cosines", "distance_convexity", "comparison_triangle"}, 4);
  for (const char* m : {"H2", "SPD2"}) {
    const PropertyResult* r = find(rep, std::string("law_of_cosines[") + m + "]");
    v.require(r && r->samples >= 1000, std::string("law_of_cosines sample count on ") + m);
    const PropertyResult* d = find(rep, std::string("distance_convexity[") + m + "]");
    v.require(d && d->samples >= 500, std::string("distance_convexity sample count on ") + m);
  }
  v.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  v.note = "runtime=" + std::to_string(secs) + "s" + (v.note.empty() ? "" : " " + v.note);
  return v;
}

Verdict resolvents() {
  Verdict v;
  double secs = 0;
  const VerifyReport rep = timed_suite("fields", secs);
  require_props(v, rep, {"fixed_points", "monotone"}, 5);
  require_props(v, rep, {"firm_nonexpansive"}, 15);
  require_props(v, rep, {"linear_oracle"}, 3);
  v.require(rep.pass(), "fields suite has failures");
  v.require(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  v.note = "runtime=" + std::to_string(secs) + "s" + (v.note.empty() ? "" : " " + v.note);
  return v;
}

Verdict equilibrium() {
  Verdict v;
  double secs = 0;
  const VerifyReport rep = timed_suite("equilibrium", secs);
  require_props(v, rep, {"firm_nonexpansive", "fixed_points", "prox_oracle"}, 4);
  v.require(rep.pass(), "equilibrium suite has failures");
  v.note = "runtime=" + std::to_string(secs) + "s" + (v.note.empty() ? "" : " " + v.note);
  return v;
}

Verdict combined_end_to_end() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::set<std::string> kinds;
  int problems = 0;
  for (const std::string& id : problem_ids()) {
    const ProblemInstance p = make_problem(id);
    if (natural_algorithm(p) != Algorithm::Combined || !p.reference) continue;
    ++problems;
    const IterationTrace t = run(p, StepSchedule::defaults(), StoppingRule{});
    const FejerReport r = fejer_diagnostics(t, p, *p.reference, 1e-9, 1e-8);
    v.require(!r.refused, id + " reference refused");
    v.require(r.pass, id + " Fejer violation " + std::to_string(r.max_violation));
    v.require(r.composite_pass, id + " composite violation " + std::to_string(r.composite_max_violation));
    v.require(r.final_step <= 1e-6, id + " terminal step " + std::to_string(r.final_step));
    v.require(r.final_y_gap <= 1e-6, id + " terminal y gap " + std::to_string(r.final_y_gap));
    v.require(r.ref_distances.back() <= 1e-5, id + " final distance " + std::to_string(r.ref_distances.back()));
    v.require(t.steps() <= 10000, id + " exceeded 10000 iterations");
    const ManifoldKind k = p.manifold.kind();
    kinds.insert(k == ManifoldKind::Euclidean     ? "euclidean"
                 : k == ManifoldKind::Hyperboloid ? "hyperboloid"
                 : k == ManifoldKind::SPD         ? "spd"
                                                  : "product");
  }
  v.require(problems >= 4, "fewer than 4 combined problems");
  v.require(kinds.size() == 4, "manifold kinds covered: " + std::to_string(kinds.size()));
  const double secs = seconds_since(t0);
  v.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  v.note = "problems=" + std::to_string(problems) + " runtime=" + std::to_string(secs) + "s" +
           (v.note.empty() ? "" : " " + v.note);
  return v;
}

Verdict specializations() {
  Verdict v;
  double secs = 0;
  const VerifyReport rep = timed_suite("splitting", secs);
  require_named(v, rep, "relaxed_ppa_oracle[euclid_linear3]");
  const PropertyResult* ppa = find(rep, "relaxed_ppa_oracle[euclid_linear3]");
  v.require(ppa && ppa->samples >= 50, "relaxed_ppa_oracle covers fewer than 50 iterations");
  for (const std::string& id : {"ep_euclid", "ep_hyperbolic"}) {
    const ProblemInstance p = make_problem(id);
    RunOptions o;
    o.algorithm = Algorithm::EquilibriumOnly;
    const IterationTrace t = run(p, StepSchedule::defaults(), StoppingRule{}, o);
    const double d = p.manifold.dist(t.final_point(), *p.reference);
    v.require(d <= 1e-5, id + " distance " + std::to_string(d));
  }
  return v;
}

Verdict applications() {
  Verdict v;
  double secs = 0;
  const VerifyReport rep = timed_suite("apps", secs);
  require_named(v, rep, "frechet_mean[H2]");
  require_named(v, rep, "karcher_mean[SPD2]");
  require_named(v, rep, "saddle_solve[bilinear]");
  const PropertyResult* b = find(rep, "saddle_solve[bilinear]");
  v.require(b && b->bound <= 1e-6, "bilinear saddle tolerance looser than 1e-6");
  require_props(v, rep, {"saddle_inequalities"}, 3);
  for (const PropertyResult& r : rep.results)
    if (prop_key(r) == "saddle_inequalities") v.require(r.samples >= 100 && r.bound <= 1e-6, r.name + " settings");
  return v;
}

Verdict negative_controls() {
  Verdict v;
  double secs = 0;
  const VerifyReport rep = timed_suite("fields", secs, true);
  const PropertyResult* r = find(rep, "monotone[anti_monotone@E2]");
  v.require(r != nullptr, "anti-monotone fixture missing");
  if (r) {
    v.require(!r->pass, "anti-monotone fixture passed");
    v.require(r->detail.find("witness") != std::string::npos, "no witness reported");
  }
  const ProblemInstance p = make_problem("euclid_quad");
  StepSchedule s = StepSchedule::defaults();
  s.alpha = Sequence::constant(1.2);
  v.require(!validate_schedule(s, 1).pass, "validate_schedule accepted alpha = 1.2");
  bool rejected = false;
  try {
    (void)run(p, s, StoppingRule{});
  } catch (const ScheduleViolation&) {
    rejected = true;
  }
  v.require(rejected, "run accepted an out-of-bounds schedule");
  return v;
}

Verdict determinism() {
  Verdict v;
  std::string outs[2];
  for (std::string& o : outs) {
    std::ostringstream out, err;
    const int code = cli::main({"verify", "all", "--seed", "7"}, out, err);
    v.require(code == 0, "verify all exit " + std::to_string(code));
    o = out.str();
  }
  v.require(!outs[0].empty() && outs[0] == outs[1], "verify all output differs");
  const fs::path base = fs::temp_directory_path() / "hsplit_acceptance";
  std::string traces[2], metas[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = base / std::to_string(i);
    fs::remove_all(dir);
    std::ostringstream out, err;
    const int code = cli::main({"run", "--problem", "saddle_hyperbolic", "--out", dir.string()}, out, err);
    v.require(code == 0, "run exit " + std::to_string(code));
    traces[i] = slurp(dir / "saddle_hyperbolic.csv");
    metas[i] = slurp(dir / "saddle_hyperbolic.meta");
  }
  v.require(!traces[0].empty() && traces[0] == traces[1], "trace bytes differ");
  v.require(!metas[0].empty() && metas[0] == metas[1], "metadata bytes differ");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 geometry suite", geometry},
      {"2 resolvent suite", resolvents},
      {"3 equilibrium suite", equilibrium},
      {"4 combined algorithm end-to-end", combined_end_to_end},
      {"5 specializations", specializations},
      {"6 applications", applications},
      {"7 negative controls", negative_controls},
      {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << (v.note.empty() ? "" : "  (" + v.note + ")") << '\n';
  }
  std::cout << (failed ? "FAILED " : "ALL PASS ") << criteria.size() - static_cast<std::size_t>(failed) << '/'
            << criteria.size() << '\n';
  return failed ? 1 : 0;
}
