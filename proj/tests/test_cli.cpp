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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hsplit/cli.hpp"
#include "hsplit/errors.hpp"
#include "hsplit/registry.hpp"
#include "hsplit/trace_io.hpp"

using namespace hsplit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hsplit_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("run converges and writes a trace") {
  const fs::path dir = scratch("run");
  const Outcome o = call({"run", "--problem", "euclid_quad", "--alpha", "0.5", "--beta", "0.5", "--lambda", "1", "--r",
                          "1", "--tol", "1e-9", "--out", dir.string()});
  CHECK(o.code == cli::kExitOk);
  REQUIRE(fs::exists(dir / "euclid_quad.csv"));
  CHECK(fs::exists(dir / "euclid_quad.meta"));
  CHECK(fs::exists(dir / "euclid_quad_plot.py"));
  const std::string csv = slurp(dir / "euclid_quad.csv");
  CHECK(csv.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  CHECK(slurp(dir / "euclid_quad.meta").find("termination=step_tolerance") != std::string::npos);
}

TEST_CASE("run exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(call({"run", "--problem", "nosuch", "--out", dir.string()}).code == cli::kExitUnknownProblem);
  const Outcome zero = call({"run", "--problem", "euclid_quad", "--max-iter", "0", "--out", dir.string()});
  CHECK(zero.code == cli::kExitMaxIter);
  CHECK(line_count(slurp(dir / "euclid_quad.csv")) == 2);
  CHECK(call({"run", "--problem", "euclid_quad", "--beta", "1.0", "--out", dir.string()}).code == cli::kExitUsage);
  CHECK(call({"run", "--alpha", "harmonic:x", "--out", dir.string()}).code == cli::kExitUsage);
  CHECK(call({"run", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(call({"run", "--config", (dir / "missing.cfg").string()}).code == cli::kExitUsage);
  CHECK(call({}).code == cli::kExitUsage);
}

TEST_CASE("config file with flag overrides and custom problems") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream c(dir / "run.cfg");
    c << "# custom hyperbolic problem\n"
         "problem = custom\n"
         "manifold = H2\n"
         "x0 = exp: 1.0, -0.5\n"
         "reference = exp: 0.2, 0.1\n"
         "field = distance_gradient\n"
         "field.anchor = exp: 0.2, 0.1\n"
         "bifunction = convex_difference\n"
         "bifunction.function = half_sq_dist\n"
         "bifunction.anchor = exp: 0.2, 0.1\n"
         "max_iter = 3\n"
         "name = from_config\n";
  }
  const Outcome a = call({"run", "--config", (dir / "run.cfg").string(), "--out", dir.string()});
  CHECK(a.code == cli::kExitMaxIter);
  CHECK(line_count(slurp(dir / "from_config.csv")) == 5);
  const Outcome b =
      call({"run", "--config", (dir / "run.cfg").string(), "--max-iter", "10000", "--out", dir.string()});
  CHECK(b.code == cli::kExitOk);

  std::ofstream bad(dir / "bad.cfg");
  bad << "frobnicate = 1\n";
  bad.close();
  CHECK(call({"run", "--config", (dir / "bad.cfg").string()}).code == cli::kExitUsage);
}

TEST_CASE("config parser") {
  std::istringstream ok("a = 1 # trailing\n\n  b=x,y \n");
  const auto cfg = cli::parse_config(ok);
  CHECK(cfg.at("a") == "1");
  CHECK(cfg.at("b") == "x,y");
  std::istringstream dup("a=1\na=2\n");
  CHECK_THROWS_AS(cli::parse_config(dup), InvalidArgument);
  std::istringstream noeq("just words\n");
  CHECK_THROWS_AS(cli::parse_config(noeq), InvalidArgument);
}

TEST_CASE("environment variable overrides the config output directory but not the flag") {
  const fs::path env_dir = scratch("env");
  const fs::path flag_dir = scratch("flag");
  ::setenv("HSPLIT_OUT_DIR", env_dir.string().c_str(), 1);
  CHECK(call({"run", "--problem", "euclid_quad"}).code == cli::kExitOk);
  CHECK(fs::exists(env_dir / "euclid_quad.csv"));
  CHECK(call({"run", "--problem", "euclid_quad", "--out", flag_dir.string()}).code == cli::kExitOk);
  CHECK(fs::exists(flag_dir / "euclid_quad.csv"));
  ::unsetenv("HSPLIT_OUT_DIR");
}

TEST_CASE("runs are byte reproducible") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const auto& d : {a, b}) REQUIRE(call({"run", "--problem", "hyp_frechet", "--out", d.string()}).code == 0);
  CHECK(slurp(a / "hyp_frechet.csv") == slurp(b / "hyp_frechet.csv"));
  CHECK(slurp(a / "hyp_frechet.meta") == slurp(b / "hyp_frechet.meta"));
}

TEST_CASE("verify exit codes") {
  const Outcome good = call({"verify", "geometry", "--seed", "42"});
  CHECK(good.code == cli::kExitOk);
  CHECK(good.out.find("comparison_triangle") != std::string::npos);
  CHECK(call({"verify", "nosuch"}).code == cli::kExitUsage);
  const Outcome neg = call({"verify", "fields", "--negative-control"});
  CHECK(neg.code == cli::kExitFailure);
  CHECK(neg.out.find("anti_monotone") != std::string::npos);
  CHECK(neg.out.find("witness") != std::string::npos);
}

TEST_CASE("bench sweeps a grid into a sorted summary") {
  const fs::path dir = scratch("bench");
  const Outcome o = call({"bench", "--problems", "euclid_quad", "--alpha", "0.9,0.1,0.5", "--jobs", "3", "--out",
                          dir.string()});
  CHECK(o.code == cli::kExitOk);
  std::istringstream is(slurp(dir / "summary.csv"));
  std::string line;
  std::getline(is, line);
  CHECK(line == "problem,alpha,beta,lambda,r,iters_to_tol,final_dx");
  std::vector<std::string> rows;
  while (std::getline(is, line)) rows.push_back(line);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].rfind("euclid_quad,0.1,", 0) == 0);
  CHECK(rows[1].rfind("euclid_quad,0.5,", 0) == 0);
  CHECK(rows[2].rfind("euclid_quad,0.9,", 0) == 0);
  for (const auto& r : rows) {
    const auto fields = r.substr(0, r.rfind(','));
    const std::string iters = fields.substr(fields.rfind(',') + 1);
    CHECK(iters.find_first_not_of("0123456789") == std::string::npos);
  }
  const Outcome bad = call({"bench", "--problems", "euclid_quad", "--alpha", "1.5", "--out", dir.string()});
  CHECK(bad.code == cli::kExitOk);
  CHECK(slurp(dir / "summary.csv").find("schedule_invalid") != std::string::npos);
}

TEST_CASE("list-problems names every shipped problem") {
  const Outcome o = call({"list-problems"});
  CHECK(o.code == cli::kExitOk);
  for (const char* id : {"euclid_quad", "hyp_frechet", "spd_karcher2", "saddle_bilinear", "ep_hyperbolic"})
    CHECK(o.out.find(id) != std::string::npos);
}

TEST_CASE("registry builds fields and rejects bad input") {
  const Manifold e = Manifold::euclidean(2);
  CHECK(parse_vector("1, 2,3").size() == 3);
  CHECK(parse_matrix("1,0;0,1").rows() == 2);
  const VectorField a = make_field("linear_psd", e, {{"matrix", "2,0;0,1"}});
  CHECK(a.evaluate(e.point({1, 1})).front()[0] == 2.0);
  CHECK_THROWS(make_field("linear_psd", e, {{"matrix", "-1,0;0,1"}}));
  CHECK_THROWS_AS(make_field("nosuch", e, {}), UnknownId);
  const Manifold h = Manifold::hyperboloid(2);
  const Point p = parse_point_spec(h, "exp: 0.5, 0");
  CHECK(h.dist(p, h.origin()) == doctest::Approx(0.5));
}
