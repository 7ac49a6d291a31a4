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

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "hsplit/errors.hpp"
#include "hsplit/manifold.hpp"

namespace hsplit {
namespace {

struct TagParser {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("bad manifold tag '" + s + "': " + why);
  }

  int number() {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a dimension");
    return std::stoi(s.substr(start, pos - start));
  }

  bool eat(const char* lit) {
    const std::string l(lit);
    if (s.compare(pos, l.size(), l) == 0) {
      pos += l.size();
      return true;
    }
    return false;
  }

  Manifold parse() {
    if (eat("SPD")) return Manifold::spd(number());
    if (eat("E")) return Manifold::euclidean(number());
    if (eat("H")) return Manifold::hyperboloid(number());
    if (eat("P(")) {
      std::vector<Manifold> fs;
      fs.push_back(parse());
      while (eat(",")) fs.push_back(parse());
      if (!eat(")")) fail("missing ')'");
      return Manifold::product(std::move(fs));
    }
    fail("unknown kind");
  }
};

}  // namespace

Manifold parse_manifold_tag(const std::string& tag) {
  TagParser p{tag};
  Manifold m = p.parse();
  if (p.pos != tag.size()) p.fail("trailing characters");
  return m;
}

std::string serialize_point(const Point& x) {
  std::string out = x.manifold().tag();
  char buf[32];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x[i]);
    out += ' ';
    out.append(buf, end);
  }
  return out;
}

Point parse_point(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  if (!(in >> tag)) throw InvalidArgument("empty point record");
  const Manifold m = parse_manifold_tag(tag);
  Eigen::VectorXd c(m.ambient_size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    std::string tok;
    if (!(in >> tok)) throw InvalidArgument("point record for " + tag + " is too short");
    double v = 0.0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) throw InvalidArgument("bad coordinate '" + tok + "'");
    c[i] = v;
  }
  std::string extra;
  if (in >> extra) throw InvalidArgument("point record for " + tag + " has trailing data");
  return m.point(std::move(c));
}

}  // namespace hsplit
