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

#include "reachbench/codegen/executor.h"

#include <algorithm>

#include "reachbench/util/error.h"

namespace reachbench::codegen {

Executor::Executor(const ParserProgram& program)
    : program_(program), stamp_(program.num_elements(), 0) {}

void Executor::hit(ElementId id) {
  if (!program_.counted[id] || stamp_[id] == epoch_) return;
  stamp_[id] = epoch_;
  result_.covered.push_back(id);
}

const ExecutionResult& Executor::run(std::string_view input,
                                     std::uint64_t step_budget) {
  return run(std::span<const std::uint8_t>(
                 reinterpret_cast<const std::uint8_t*>(input.data()),
                 input.size()),
             step_budget);
}

const ExecutionResult& Executor::run(std::span<const std::uint8_t> input,
                                     std::uint64_t step_budget) {
  if (step_budget == 0) throw ConfigError("step budget must be positive");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  result_.covered.clear();
  result_.verdict = Verdict::kReject;
  result_.budget_exhausted = false;
  std::uint64_t steps = 0;
  std::size_t pos = 0;
  const std::size_t len = input.size();
  bool failed = false;

  stack_.clear();
  stack_.push_back({program_.start, -1, 0});
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    const Procedure& proc = program_.procedures[f.proc];
    if (f.arm >= 0 && f.next == proc.arms[f.arm].body.size()) {
      if (proc.arms[f.arm].loops) {
        f.arm = -1;
      } else {
        stack_.pop_back();
      }
      continue;
    }
    if (++steps > step_budget) {
      steps = step_budget;
      result_.budget_exhausted = true;
      failed = true;
      break;
    }
    const int la = pos < len ? input[pos] : grammar::kEndOfInput;
    if (f.arm < 0) {
      const int a = proc.dispatch[la];
      if (a < 0) {
        hit(proc.error_exit);
        failed = true;
        break;
      }
      f.arm = a;
      f.next = 0;
      hit(proc.arms[a].element);
      continue;
    }
    const grammar::Symbol& s = proc.arms[f.arm].body[f.next++];
    if (s.is_terminal()) {
      if (la != static_cast<int>(s.id)) {
        hit(proc.error_exit);
        failed = true;
        break;
      }
      ++pos;
    } else if (s.is_nonterminal()) {
      stack_.push_back({s.id, -1, 0});
    }
  }
  result_.steps = steps;
  result_.consumed = pos;
  if (!failed && pos == len) result_.verdict = Verdict::kAccept;
  std::sort(result_.covered.begin(), result_.covered.end());
  return result_;
}

ExecutionResult execute_parser(const ParserProgram& program,
                               std::span<const std::uint8_t> input,
                               std::uint64_t step_budget) {
  Executor ex(program);
  return ex.run(input, step_budget);
}

}  // namespace reachbench::codegen
