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

#include "hsplit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <tuple>

#include <omp.h>

#include "hsplit/errors.hpp"
#include "hsplit/problems.hpp"
#include "hsplit/registry.hpp"
#include "hsplit/splitting.hpp"
#include "hsplit/trace_io.hpp"
#include "hsplit/verify.hpp"

namespace hsplit::cli {

namespace {

namespace fs = std::filesystem;
using Config = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Keys shared by the config file and the command line of `run` and `bench`.
const std::vector<std::string>& run_keys() {
  static const std::vector<std::string> k{
      "problem", "alpha",     "beta",      "lambda",    "r",      "a",        "b",        "lambda_min",
      "lambda_max", "r_min",  "r_tail_start", "max_iter", "tol",  "ref_tol",  "out",      "seed",
      "algorithm", "inner_tol", "inner_max_iter", "timing", "name", "problems", "jobs"};
  return k;
}

bool is_custom_problem_key(const std::string& k) {
  static const std::vector<std::string> top{"manifold", "x0", "reference", "field", "bifunction", "id"};
  if (std::find(top.begin(), top.end(), k) != top.end()) return true;
  return k.rfind("field.", 0) == 0 || k.rfind("bifunction.", 0) == 0;
}

void check_config_keys(const Config& cfg) {
  for (const auto& [k, v] : cfg) {
    const auto& known = run_keys();
    if (std::find(known.begin(), known.end(), k) == known.end() && !is_custom_problem_key(k))
      throw InvalidArgument("unknown config key '" + k + "'");
  }
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw InvalidArgument("bad number for " + key + ": '" + text + "'");
  return v;
}

long to_long(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw InvalidArgument("bad integer for " + key + ": '" + text + "'");
  return v;
}

std::uint64_t to_seed(const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw InvalidArgument("bad seed '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw InvalidArgument("bad boolean for " + key + ": '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Settings of one run after merging config, environment and flags.
struct RunSettings {
  std::string problem = "euclid_quad";
  std::string alpha = "0.5", beta = "0.5", lambda = "1", r = "1";
  ScheduleBounds bounds;
  StoppingRule stop;
  std::string out = "hsplit_out";
  std::uint64_t seed = 0;
  std::string algorithm = "auto";
  InnerSolverOptions inner;
  bool timing = false;
  std::string name;
};

RunSettings settings_from(const Config& c) {
  RunSettings s;
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = c.find(k);
    return it == c.end() ? nullptr : &it->second;
  };
  if (auto v = get("problem")) s.problem = *v;
  if (auto v = get("alpha")) s.alpha = *v;
  if (auto v = get("beta")) s.beta = *v;
  if (auto v = get("lambda")) s.lambda = *v;
  if (auto v = get("r")) s.r = *v;
  if (auto v = get("a")) s.bounds.a = to_double("a", *v);
  if (auto v = get("b")) s.bounds.b = to_double("b", *v);
  if (auto v = get("lambda_min")) s.bounds.lambda_min = to_double("lambda_min", *v);
  if (auto v = get("lambda_max")) s.bounds.lambda_max = to_double("lambda_max", *v);
  if (auto v = get("r_min")) s.bounds.r_min = to_double("r_min", *v);
  if (auto v = get("r_tail_start")) s.bounds.r_tail_start = to_long("r_tail_start", *v);
  if (auto v = get("max_iter")) s.stop.max_iter = to_long("max_iter", *v);
  if (auto v = get("tol")) s.stop.step_tol = to_double("tol", *v);
  if (auto v = get("ref_tol")) s.stop.ref_tol = to_double("ref_tol", *v);
  if (auto v = get("out")) s.out = *v;
  if (auto v = get("seed")) s.seed = to_seed(*v);
  if (auto v = get("algorithm")) s.algorithm = *v;
  if (auto v = get("inner_tol")) s.inner.inner_tol = to_double("inner_tol", *v);
  if (auto v = get("inner_max_iter")) s.inner.inner_max_iter = static_cast<int>(to_long("inner_max_iter", *v));
  if (auto v = get("timing")) s.timing = to_bool("timing", *v);
  if (auto v = get("name")) s.name = *v;
  if (s.stop.max_iter < 0) throw InvalidArgument("max_iter must be nonnegative");
  return s;
}

StepSchedule schedule_of(const RunSettings& s) {
  return StepSchedule{Sequence::parse(s.alpha), Sequence::parse(s.beta), Sequence::parse(s.lambda),
                      Sequence::parse(s.r), s.bounds};
}

ProblemInstance problem_of(const std::string& id, const Config& cfg) {
  if (id == "custom") return make_custom_problem(cfg);
  return make_problem(id);
}

RunOptions options_of(const RunSettings& s, const ProblemInstance& p) {
  RunOptions o;
  o.inner = s.inner;
  o.record_wall_time = s.timing;
  if (s.algorithm == "auto") {
    o.algorithm = natural_algorithm(p);
  } else if (s.algorithm == "1") {
    o.algorithm = Algorithm::Combined;
  } else if (s.algorithm == "2") {
    o.algorithm = Algorithm::InclusionOnly;
  } else if (s.algorithm == "3") {
    o.algorithm = Algorithm::EquilibriumOnly;
  } else {
    throw InvalidArgument("algorithm must be auto, 1, 2 or 3");
  }
  return o;
}

int exit_code_of(Termination t) {
  switch (t) {
    case Termination::StepTolerance:
    case Termination::ReferenceTolerance: return kExitOk;
    case Termination::MaxIterations: return kExitMaxIter;
    case Termination::ResolventFailure: return kExitResolventFailure;
    case Termination::ScheduleViolation: return kExitUsage;
  }
  return kExitFailure;
}

/// Adds --key options for every run key; values land in `flags` only when given.
void add_run_flags(CLI::App& cmd, Config& flags, bool sweep) {
  auto add = [&](const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd.add_option_function<std::string>(flag, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  if (sweep) {
    add("problems", "comma-separated problem ids");
    add("alpha", "comma-separated alpha grid");
    add("beta", "comma-separated beta grid");
    add("lambda", "comma-separated lambda grid");
    add("r", "comma-separated r grid");
    add("jobs", "concurrent cells");
  } else {
    add("problem", "problem id, or custom");
    add("alpha", "alpha_n: number, const:c, alt:c,amp, harmonic:c or relax:limit,amp");
    add("beta", "beta_n, same forms as alpha");
    add("lambda", "lambda_n, same forms as alpha");
    add("r", "r_n, same forms as alpha");
    add("ref_tol", "stop once d(x_n, reference) <= value");
    add("timing", "record wall time per step (true/false)");
    add("name", "file stem of the trace");
  }
  add("a", "lower bound of alpha_n and beta_n");
  add("b", "upper bound of alpha_n and beta_n");
  add("lambda_min", "lower bound of lambda_n");
  add("lambda_max", "upper bound of lambda_n");
  add("r_min", "lower bound of r_n on the tail");
  add("r_tail_start", "first index of the r_n tail");
  add("max_iter", "iteration limit");
  add("tol", "stop once d(x_{n+1}, x_n) <= value");
  add("out", "output directory");
  add("seed", "random seed");
  add("algorithm", "auto, 1, 2 or 3");
  add("inner_tol", "inner solver tolerance");
  add("inner_max_iter", "inner solver iteration limit");
}

/// config < HSPLIT_OUT_DIR < flags for the output directory; config < flags otherwise.
Config merge(const std::string& config_path, const Config& flags) {
  Config cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  check_config_keys(cfg);
  if (const char* env = std::getenv("HSPLIT_OUT_DIR"); env && *env) cfg["out"] = env;
  for (const auto& [k, v] : flags) cfg[k] = v;
  return cfg;
}

std::string stem_for(const RunSettings& s) { return s.name.empty() ? s.problem : s.name; }

int cmd_run(const Config& cfg, std::ostream& out, std::ostream& err) {
  const RunSettings s = settings_from(cfg);
  std::optional<ProblemInstance> p;
  try {
    p = problem_of(s.problem, cfg);
  } catch (const UnknownId& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnknownProblem;
  }
  const StepSchedule sched = schedule_of(s);
  const RunOptions opts = options_of(s, *p);
  IterationTrace trace;
  try {
    trace = run(*p, sched, s.stop, opts);
  } catch (const ScheduleViolation& e) {
    err << "error: invalid schedule: " << e.what() << '\n';
    return kExitUsage;
  }
  MetaEntries meta = trace_metadata(trace, *p, sched, s.stop, opts);
  meta.emplace_back("seed", std::to_string(s.seed));
  const TraceFiles files = write_trace_files(s.out, stem_for(s), trace, meta);
  const IterationRecord& last = trace.records.back();
  const double final_dx = trace.records.size() > 1 ? trace.records[trace.records.size() - 2].dx_step
                                                   : std::numeric_limits<double>::quiet_NaN();
  out << "problem=" << p->id << " termination=" << to_string(trace.termination) << " steps=" << trace.steps()
      << " final_dx=" << format_double(final_dx) << " dx_ref=" << format_double(last.dx_ref) << '\n';
  out << "trace=" << files.csv.string() << '\n';
  if (trace.termination == Termination::ResolventFailure) err << "resolvent failure: " << trace.message << '\n';
  return exit_code_of(trace.termination);
}

struct Cell {
  std::string problem;
  double alpha, beta, lambda, r;
  std::string alpha_text, beta_text, lambda_text, r_text;
};

struct CellOutcome {
  std::string iters;
  std::string final_dx;
};

int cmd_bench(const Config& cfg, std::ostream& out, std::ostream& err) {
  const RunSettings base = settings_from(cfg);
  auto grid = [&](const std::string& key, const std::string& fallback) {
    const auto it = cfg.find(key);
    std::vector<std::string> items = split_list(it == cfg.end() ? fallback : it->second);
    if (items.empty()) throw InvalidArgument("empty grid for " + key);
    std::vector<std::pair<double, std::string>> out;
    for (const auto& t : items) out.emplace_back(to_double(key, t), t);
    return out;
  };
  const auto pit = cfg.find("problems");
  const std::vector<std::string> problems = split_list(pit == cfg.end() ? base.problem : pit->second);
  if (problems.empty()) throw InvalidArgument("empty problem list");
  const auto alphas = grid("alpha", "0.5"), betas = grid("beta", "0.5"), lambdas = grid("lambda", "1"),
             rs = grid("r", "1");
  const int jobs = cfg.count("jobs") ? static_cast<int>(to_long("jobs", cfg.at("jobs"))) : 1;
  if (jobs < 1) throw InvalidArgument("jobs must be positive");

  std::vector<Cell> cells;
  for (const auto& p : problems)
    for (const auto& a : alphas)
      for (const auto& b : betas)
        for (const auto& l : lambdas)
          for (const auto& r : rs) cells.push_back({p, a.first, b.first, l.first, r.first, a.second, b.second, l.second, r.second});
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    return std::tie(x.problem, x.alpha, x.beta, x.lambda, x.r) < std::tie(y.problem, y.alpha, y.beta, y.lambda, y.r);
  });
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [](const Cell& x, const Cell& y) {
                            return std::tie(x.problem, x.alpha, x.beta, x.lambda, x.r) ==
                                   std::tie(y.problem, y.alpha, y.beta, y.lambda, y.r);
                          }),
              cells.end());

  const fs::path dir = fs::path(base.out);
  fs::create_directories(dir / "cells");
  std::vector<CellOutcome> outcomes(cells.size());
  const auto n = static_cast<long long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long long i = 0; i < n; ++i) {
    const Cell& c = cells[static_cast<std::size_t>(i)];
    CellOutcome& o = outcomes[static_cast<std::size_t>(i)];
    o.final_dx = "nan";
    try {
      RunSettings s = base;
      s.problem = c.problem;
      s.alpha = c.alpha_text;
      s.beta = c.beta_text;
      s.lambda = c.lambda_text;
      s.r = c.r_text;
      s.seed = base.seed ^ static_cast<std::uint64_t>(i);
      const ProblemInstance p = problem_of(s.problem, cfg);
      const StepSchedule sched = schedule_of(s);
      const RunOptions opts = options_of(s, p);
      const IterationTrace t = run(p, sched, s.stop, opts);
      MetaEntries meta = trace_metadata(t, p, sched, s.stop, opts);
      meta.emplace_back("seed", std::to_string(s.seed));
      const std::string stem =
          c.problem + "_a" + c.alpha_text + "_b" + c.beta_text + "_l" + c.lambda_text + "_r" + c.r_text;
      write_trace_files(dir / "cells", stem, t, meta);
      if (t.records.size() > 1) o.final_dx = format_double(t.records[t.records.size() - 2].dx_step);
      switch (t.termination) {
        case Termination::StepTolerance:
        case Termination::ReferenceTolerance: o.iters = std::to_string(t.steps()); break;
        case Termination::MaxIterations: o.iters = "max_iter"; break;
        case Termination::ResolventFailure: o.iters = "resolvent_failure"; break;
        case Termination::ScheduleViolation: o.iters = "schedule_invalid"; break;
      }
    } catch (const ScheduleViolation&) {
      o.iters = "schedule_invalid";
    } catch (const UnknownId&) {
      o.iters = "unknown_problem";
    } catch (const std::exception&) {
      o.iters = "error";
    }
  }

  std::ofstream summary(dir / "summary.csv", std::ios::binary | std::ios::trunc);
  if (!summary) throw Error("cannot write " + (dir / "summary.csv").string());
  summary << "problem,alpha,beta,lambda,r,iters_to_tol,final_dx\n";
  std::size_t failed = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    summary << c.problem << ',' << format_double(c.alpha) << ',' << format_double(c.beta) << ','
            << format_double(c.lambda) << ',' << format_double(c.r) << ',' << outcomes[i].iters << ','
            << outcomes[i].final_dx << '\n';
    if (outcomes[i].iters.find_first_not_of("0123456789") != std::string::npos) ++failed;
  }
  out << "cells=" << cells.size() << " without_tolerance=" << failed << " summary=" << (dir / "summary.csv").string()
      << '\n';
  if (failed) err << failed << " cells did not reach tolerance; see summary\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int jobs, bool negative, std::ostream& out,
               std::ostream& err) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    err << "error: unknown suite '" << suite << "'\n";
    return kExitUsage;
  }
  VerifyOptions o;
  o.seed = seed;
  o.negative_control = negative;
  o.execution = jobs > 1 ? Execution::Parallel : Execution::Serial;
  o.threads = jobs;
  const VerifyReport r = run_suite(suite, o);
  print_report(r, out);
  return r.pass() ? kExitOk : kExitFailure;
}

int cmd_list(std::ostream& out) {
  for (const ProblemInfo& p : list_problems()) {
    out << p.id << '\t' << p.manifold << '\t' << p.algorithm << '\t' << p.description << '\n';
    out << "\treference: " << p.reference << '\n';
    out << "\tprovenance: " << p.provenance << '\n';
  }
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& is) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
    if (!cfg.emplace(key, value).second)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return cfg;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot read config '" + path + "'");
  return parse_config(is);
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splitting methods for equilibrium and inclusion problems on Hadamard manifolds", "hsplit"};
  app.require_subcommand(1);

  Config run_flags;
  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "run one problem and write its trace");
  run->add_option("--config", run_config, "flat key=value config file");
  add_run_flags(*run, run_flags, false);

  std::string suite;
  std::uint64_t seed = 42;
  int jobs = 1;
  bool negative = false;
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", suite, "geometry, fields, equilibrium, splitting, apps or all")->required();
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--jobs", jobs, "threads for batch kernels (1 = serial)");
  verify->add_flag("--negative-control", negative, "include the anti-monotone fixture");

  Config bench_flags;
  std::string bench_config;
  CLI::App* bench = app.add_subcommand("bench", "sweep schedules over problems");
  bench->add_option("--config", bench_config, "flat key=value config file");
  add_run_flags(*bench, bench_flags, true);

  CLI::App* list = app.add_subcommand("list-problems", "list the shipped problems");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(merge(run_config, run_flags), out, err);
    if (bench->parsed()) return cmd_bench(merge(bench_config, bench_flags), out, err);
    if (verify->parsed()) {
      if (jobs < 1) throw InvalidArgument("jobs must be positive");
      return cmd_verify(suite, seed, jobs, negative, out, err);
    }
    if (list->parsed()) return cmd_list(out);
  } catch (const UnknownId& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hsplit::cli
