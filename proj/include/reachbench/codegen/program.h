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

#ifndef REACHBENCH_CODEGEN_PROGRAM_H_
#define REACHBENCH_CODEGEN_PROGRAM_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reachbench/grammar/analysis.h"
#include "reachbench/grammar/grammar.h"
#include "reachbench/grammar/label.h"

namespace reachbench::codegen {

using grammar::ElementId;
using grammar::NonterminalId;
using grammar::RuleId;

// One dispatch arm of a procedure, lowered from one rule.
struct Arm {
  RuleId rule = 0;
  ElementId element = 0;
  // Dead arms sit behind a constant-false guard and never dispatch.
  bool dead = false;
  std::optional<ElementId> guard;
  grammar::TokenSet predict;
  // Statement sequence. For loop arms the trailing self call is removed and
  // the procedure re-dispatches instead.
  std::vector<grammar::Symbol> body;
  bool loops = false;
};

struct Procedure {
  NonterminalId nonterminal = 0;
  std::string name;
  std::vector<Arm> arms;
  ElementId error_exit = 0;
  // Index into `arms` for each lookahead token, -1 when the error exit fires.
  std::array<std::int16_t, grammar::kTokenCount> dispatch{};
  bool has_loop = false;
};

struct CompileOptions {
  // When false, error-exit elements are neither recorded nor part of the
  // ground truth.
  bool count_error_exits = true;
};

struct ParserProgram {
  std::vector<Procedure> procedures;  // indexed by nonterminal id
  NonterminalId start = 0;
  std::vector<grammar::CoverageElement> elements;
  std::vector<bool> counted;       // per element: recorded on execution
  std::vector<ElementId> ground_truth;  // ascending
  std::string source_grammar_digest;
  CompileOptions options;

  std::size_t num_elements() const { return elements.size(); }
  bool in_ground_truth(ElementId id) const;
};

// Lowers an LL(1) grammar to a recursive-descent program. Throws
// ValidationError listing PREDICT conflicts for a non-LL(1) grammar and
// IntegrityError when `label` disagrees with the grammar.
ParserProgram compile_to_parser(const grammar::Grammar& grammar,
                                const grammar::GroundTruthLabel& label,
                                const CompileOptions& options = {});

// The exact set of elements some input covers, ascending.
std::vector<ElementId> ground_truth_elements(
    const ParserProgram& program, const grammar::Grammar& grammar,
    const grammar::PredictTable& table, const grammar::GroundTruthLabel& label);

// Summed per-procedure McCabe number. A k-way dispatch contributes k - 1
// decisions; dead arms count as arms; error exits are exceptional edges.
int cyclomatic_complexity(const ParserProgram& program);

// IR dump and element manifest (id, kind, origin, ground-truth flag).
std::string program_to_json(const ParserProgram& program);
std::string element_manifest(const ParserProgram& program,
                             const grammar::Grammar& grammar);

}  // namespace reachbench::codegen

#endif  // REACHBENCH_CODEGEN_PROGRAM_H_
