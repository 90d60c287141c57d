// Copyright 2026 The sdrgrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SDRGRID_TOOLS_CLI_H_
#define SDRGRID_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace sdrgrid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Relative paths that do not exist are retried under this directory.
inline constexpr const char* kFixtureDirEnv = "SDRGRID_FIXTURE_DIR";

// `args` excludes the program name. "-" or an omitted input reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace sdrgrid::cli

#endif  // SDRGRID_TOOLS_CLI_H_
