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

#ifndef REACHBENCH_GRAMMAR_FLOW_H_
#define REACHBENCH_GRAMMAR_FLOW_H_

#include <vector>

#include "reachbench/grammar/analysis.h"
#include "reachbench/grammar/grammar.h"

namespace reachbench::grammar {

// Exact control-flow reachability of the recursive-descent parser compiled
// from a grammar. The parser state that matters at any point is the pair
// (program point, lookahead token): decisions read only the lookahead, and
// the bytes after it are unconstrained. Propagating lookahead sets through
// rule bodies therefore yields exactly the reachable arms and error exits.
struct FlowResult {
  std::vector<TokenSet> entry;         // lookaheads seen on procedure entry
  std::vector<bool> called;            // procedure entered on some input
  std::vector<bool> arm_reachable;     // per rule
  std::vector<bool> error_reachable;   // per nonterminal
  std::vector<bool> mismatch_in_body;  // a terminal mismatch inside a body
};

// Dead-annotated rules never dispatch; their tokens reach the error exit.
// `live` must be compute_first_follow(grammar, RuleScope::kLive).
FlowResult analyze_flow(const Grammar& grammar, const PredictTable& live);
FlowResult analyze_flow(const Grammar& grammar);

}  // namespace reachbench::grammar

#endif  // REACHBENCH_GRAMMAR_FLOW_H_
