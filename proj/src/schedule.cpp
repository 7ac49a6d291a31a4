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

#include "hsplit/schedule.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hsplit/errors.hpp"

namespace hsplit {
namespace {

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double to_double(const std::string& s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw InvalidArgument("bad number '" + s + "'");
  return v;
}

std::vector<double> numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(to_double(tok));
  return out;
}

}  // namespace

Sequence Sequence::constant(double c) { return {[c](long) { return c; }, fmt(c)}; }

Sequence Sequence::alternating(double c, double amp) {
  return {[c, amp](long n) { return c + (n % 2 == 0 ? amp : -amp); }, "alt:" + fmt(c) + "," + fmt(amp)};
}

Sequence Sequence::harmonic(double c) {
  return {[c](long n) { return c / static_cast<double>(n + 1); }, "harmonic:" + fmt(c)};
}

Sequence Sequence::relaxing(double limit, double amp) {
  return {[limit, amp](long n) { return limit + amp / static_cast<double>(n + 1); },
          "relax:" + fmt(limit) + "," + fmt(amp)};
}

Sequence Sequence::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return constant(to_double(text));
  const std::string kind = text.substr(0, colon);
  const auto args = numbers(text.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw InvalidArgument("sequence '" + text + "' expects " + std::to_string(k) + " arguments");
  };
  if (kind == "const") {
    need(1);
    return constant(args[0]);
  }
  if (kind == "alt") {
    need(2);
    return alternating(args[0], args[1]);
  }
  if (kind == "harmonic") {
    need(1);
    return harmonic(args[0]);
  }
  if (kind == "relax") {
    need(2);
    return relaxing(args[0], args[1]);
  }
  throw InvalidArgument("unknown sequence kind '" + kind + "'");
}

StepSchedule StepSchedule::constant(double alpha, double beta, double lambda, double r, ScheduleBounds bounds) {
  return {Sequence::constant(alpha), Sequence::constant(beta), Sequence::constant(lambda), Sequence::constant(r),
          bounds};
}

StepSchedule StepSchedule::defaults() { return constant(0.5, 0.5, 1.0, 1.0); }

std::optional<long> ScheduleReport::first_violation(const std::string& parameter, const std::string& side) const {
  for (const auto& v : per_condition) {
    if (v.parameter == parameter && v.side == side) return v.index;
  }
  return std::nullopt;
}

std::string ScheduleReport::summary() const {
  if (pass) return "schedule valid";
  const auto& f = *first;
  if (f.parameter == "bounds") return "schedule bounds are malformed";
  return f.parameter + "_" + std::to_string(f.index) + " = " + fmt(f.value) + " violates the " + f.side + " bound";
}

ScheduleReport validate_schedule(const StepSchedule& s, long horizon) {
  if (horizon < 1) throw InvalidArgument("validate_schedule: horizon must be >= 1");
  ScheduleReport rep;
  const auto& bd = s.bounds;
  if (!(0.0 < bd.a && bd.a <= bd.b && bd.b < 1.0 && 0.0 < bd.lambda_min && bd.lambda_min <= bd.lambda_max &&
        std::isfinite(bd.lambda_max) && bd.r_min > 0.0 && bd.r_tail_start >= 0)) {
    rep.pass = false;
    rep.first = ScheduleViolationRecord{-1, "bounds", "lower", 0.0};
    rep.per_condition.push_back(*rep.first);
    return rep;
  }

  auto note = [&](long n, const char* param, const char* side, double value) {
    for (const auto& v : rep.per_condition) {
      if (v.parameter == param && v.side == side) return;
    }
    rep.per_condition.push_back({n, param, side, value});
    if (!rep.first || n < rep.first->index) rep.first = rep.per_condition.back();
  };

  rep.r_tail_min = std::numeric_limits<double>::infinity();
  for (long n = 0; n <= horizon; ++n) {
    const double al = s.alpha(n), be = s.beta(n), la = s.lambda(n), r = s.r(n);
    if (!(al >= bd.a)) note(n, "alpha", "lower", al);
    if (!(al <= bd.b)) note(n, "alpha", "upper", al);
    if (!(be >= bd.a)) note(n, "beta", "lower", be);
    if (!(be <= bd.b)) note(n, "beta", "upper", be);
    if (!(la >= bd.lambda_min)) note(n, "lambda", "lower", la);
    if (!(la <= bd.lambda_max)) note(n, "lambda", "upper", la);
    if (!(r > 0.0) || !std::isfinite(r)) note(n, "r", "lower", r);
    if (n >= bd.r_tail_start) {
      rep.r_tail_min = std::min(rep.r_tail_min, r);
      if (!(r >= bd.r_min)) note(n, "r", "lower", r);
    }
  }
  rep.pass = !rep.first.has_value();
  return rep;
}

}  // namespace hsplit
