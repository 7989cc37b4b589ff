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

#ifndef REACHBENCH_GRAMMAR_SERIALIZE_H_
#define REACHBENCH_GRAMMAR_SERIALIZE_H_

#include <string>
#include <string_view>

#include "reachbench/grammar/grammar.h"

namespace reachbench::grammar {

// Grammar text format (UTF-8 JSON, two-space indent, trailing newline):
//
//   {
//     "format": "reachbench-grammar",
//     "version": 1,
//     "terminals": [97, 98],
//     "nonterminals": ["N0", "N1"],
//     "start": "N0",
//     "rules": [
//       {"id": 0, "lhs": "N0", "rhs": [97, "N1"]},
//       {"id": 1, "lhs": "N1", "rhs": []}
//     ],
//     "annotations": {"unreachable": [], "dead_rules": []}
//   }
//
// rhs entries are terminal byte values or nonterminal names; an empty rhs
// is the epsilon rule. Rule ids must be 0, 1, 2, ... in order. The output
// of serialize_grammar is canonical: parse then serialize is byte-identical.
std::string serialize_grammar(const Grammar& grammar);

// Throws ParseError on malformed text and ValidationError on a structurally
// invalid grammar.
Grammar parse_grammar(std::string_view text);

}  // namespace reachbench::grammar

#endif  // REACHBENCH_GRAMMAR_SERIALIZE_H_
