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

#ifndef REACHBENCH_TESTS_SUPPORT_C_HARNESS_H_
#define REACHBENCH_TESTS_SUPPORT_C_HARNESS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "reachbench/codegen/executor.h"

namespace reachbench::testing {

struct CRun {
  bool accepted = false;
  std::vector<grammar::ElementId> covered;
};

// Path of the C compiler found at configure time, empty if none.
std::string c_compiler();

// Compiles `source` with warnings as errors into `dir`; returns the binary
// path. Throws std::runtime_error with the compiler output on failure.
std::filesystem::path compile_c(const std::string& source,
                                const std::filesystem::path& dir,
                                const std::string& name);

// Runs the binary in batch mode over all inputs.
std::vector<CRun> run_batch(const std::filesystem::path& binary,
                            const std::vector<std::string>& inputs);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace reachbench::testing

#endif  // REACHBENCH_TESTS_SUPPORT_C_HARNESS_H_
