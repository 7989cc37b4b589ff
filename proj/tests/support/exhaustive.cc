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

#include "support/exhaustive.h"

#include "reachbench/codegen/executor.h"

namespace reachbench::testing {

std::vector<std::uint8_t> probe_alphabet(const grammar::Grammar& g) {
  std::vector<std::uint8_t> out = g.terminals();
  for (int b = 0; b < 256; ++b) {
    if (!g.has_terminal(static_cast<std::uint8_t>(b))) {
      out.push_back(static_cast<std::uint8_t>(b));
      break;
    }
  }
  return out;
}

std::set<grammar::ElementId> exhaustive_coverage(
    const codegen::ParserProgram& program,
    const std::vector<std::uint8_t>& alphabet, std::size_t max_len,
    std::size_t* executions) {
  codegen::Executor ex(program);
  std::set<grammar::ElementId> seen;
  std::size_t runs = 0;
  std::vector<std::uint8_t> buf;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    buf.assign(len, alphabet.empty() ? 0 : alphabet[0]);
    for (;;) {
      const auto& r = ex.run(buf);
      ++runs;
      seen.insert(r.covered.begin(), r.covered.end());
      std::size_t i = 0;
      while (i < len && ++digits[i] == alphabet.size()) {
        digits[i] = 0;
        buf[i] = alphabet[0];
        ++i;
      }
      if (i == len) break;
      buf[i] = alphabet[digits[i]];
    }
  }
  if (executions != nullptr) *executions = runs;
  return seen;
}

}  // namespace reachbench::testing
