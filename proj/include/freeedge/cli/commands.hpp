// Copyright 2026-present the free-edge project
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// The free_edge command line: `edges`, `verify` and `cauchy` subcommands.
namespace freeedge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitDisagree = 2,
  kExitSolver = 3,
};

/// Runs the tool on `args` (without the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freeedge::cli
