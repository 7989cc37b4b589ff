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

#ifndef REACHBENCH_CODEGEN_EXPORT_C_H_
#define REACHBENCH_CODEGEN_EXPORT_C_H_

#include <cstdint>
#include <string>

#include "reachbench/codegen/executor.h"
#include "reachbench/codegen/program.h"

namespace reachbench::codegen {

// Emits a self-contained C99 translation unit: one rb_parse_<name> function
// per procedure, a hit bitmap indexed by element id, and a main that parses
// standard input and prints each covered element id on its own line. With
// `--batch`, main instead reads records of a 4-byte little-endian length
// followed by that many bytes and prints one line per record:
// "accept|reject" followed by the covered ids.
std::string export_c_source(const ParserProgram& program,
                            std::uint64_t step_budget = kDefaultStepBudget);

}  // namespace reachbench::codegen

#endif  // REACHBENCH_CODEGEN_EXPORT_C_H_
