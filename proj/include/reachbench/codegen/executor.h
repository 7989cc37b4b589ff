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

#ifndef REACHBENCH_CODEGEN_EXECUTOR_H_
#define REACHBENCH_CODEGEN_EXECUTOR_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "reachbench/codegen/program.h"

namespace reachbench::codegen {

enum class Verdict : std::uint8_t { kAccept, kReject };

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

struct ExecutionResult {
  std::vector<ElementId> covered;  // ascending, counted elements only
  Verdict verdict = Verdict::kReject;
  std::size_t consumed = 0;
  std::uint64_t steps = 0;
  bool budget_exhausted = false;
};

// Reusable interpreter for one program. Holds per-run scratch, so a single
// Executor must not be shared between threads; the program itself may be.
class Executor {
 public:
  explicit Executor(const ParserProgram& program);

  // Runs the parser on `input`. One step is charged per dispatch and per
  // body statement.
  const ExecutionResult& run(std::span<const std::uint8_t> input,
                             std::uint64_t step_budget = kDefaultStepBudget);
  const ExecutionResult& run(std::string_view input,
                             std::uint64_t step_budget = kDefaultStepBudget);

 private:
  struct Frame {
    std::uint32_t proc;
    std::int32_t arm;  // -1 before dispatch
    std::uint32_t next;
  };

  void hit(ElementId id);

  const ParserProgram& program_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Frame> stack_;
  ExecutionResult result_;
};

ExecutionResult execute_parser(const ParserProgram& program,
                               std::span<const std::uint8_t> input,
                               std::uint64_t step_budget = kDefaultStepBudget);

}  // namespace reachbench::codegen

#endif  // REACHBENCH_CODEGEN_EXECUTOR_H_
