// Copyright 2026 The Reachbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REACHBENCH_CLI_APP_H_
#define REACHBENCH_CLI_APP_H_

#include <string>
#include <vector>

namespace reachbench::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitRuntimeFailure = 2,
  kExitPartial = 3,
};

// Entry point of the reachbench tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace reachbench::cli

#endif  // REACHBENCH_CLI_APP_H_
