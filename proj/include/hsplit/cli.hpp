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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hsplit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMaxIter = 2;
inline constexpr int kExitResolventFailure = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitUnknownProblem = 65;

/// Flat key=value file; '#' starts a comment. Throws hsplit::InvalidArgument
/// on malformed lines or duplicate keys.
std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> load_config(const std::string& path);

/// Entry point of the hsplit tool; args excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsplit::cli
