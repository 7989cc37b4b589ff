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

#ifndef REACHBENCH_GRAMMAR_ANALYSIS_H_
#define REACHBENCH_GRAMMAR_ANALYSIS_H_

#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include "reachbench/grammar/grammar.h"

namespace reachbench::grammar {

struct PredictTable {
  std::vector<TokenSet> first;    // per nonterminal
  std::vector<TokenSet> follow;   // per nonterminal
  std::vector<bool> nullable;     // per nonterminal
  std::vector<TokenSet> predict;  // per rule
};

// Which rules take part in an analysis. kLive drops annotated dead rules,
// which is the view the compiled parser dispatches on. Excluded rules still
// get a PREDICT entry, computed from the live FIRST/FOLLOW sets.
enum class RuleScope { kAll, kLive };

// Fixpoint FIRST/FOLLOW/nullable/PREDICT. Validates the grammar first.
PredictTable compute_first_follow(const Grammar& grammar,
                                  RuleScope scope = RuleScope::kAll);

// FIRST of a symbol sequence under `table`; `nullable` receives whether the
// whole sequence derives epsilon.
TokenSet first_of_sequence(const PredictTable& table,
                           std::span<const Symbol> symbols, bool* nullable);

struct Ll1Conflict {
  NonterminalId nonterminal = 0;
  RuleId first_rule = 0;
  RuleId second_rule = 0;
  TokenSet overlap;
};

struct Ll1Verdict {
  std::vector<Ll1Conflict> conflicts;
  bool ok() const { return conflicts.empty(); }
};

// Reports every pairwise PREDICT overlap between rules of one nonterminal.
Ll1Verdict check_ll1(const Grammar& grammar, const PredictTable& table,
                     RuleScope scope = RuleScope::kAll);

// Least set containing the start symbol closed under rhs references.
std::set<NonterminalId> reachable_nonterminals(const Grammar& grammar);
std::vector<bool> reachable_mask(const Grammar& grammar,
                                 RuleScope scope = RuleScope::kAll);

std::set<NonterminalId> check_productivity(const Grammar& grammar);
std::vector<bool> productive_mask(const Grammar& grammar,
                                  RuleScope scope = RuleScope::kAll);

// Size of the smallest derivation tree rooted at each nonterminal (counted
// in rule applications), kUnproductive when none exists. A rule whose cost
// equals its lhs minimum only references strictly cheaper nonterminals.
// Costs are doubles so very deep grammars cannot overflow.
inline constexpr double kUnproductive = std::numeric_limits<double>::infinity();
std::vector<double> min_derivation_cost(const Grammar& grammar,
                                        RuleScope scope = RuleScope::kAll);
double rule_cost(const Rule& rule, const std::vector<double>& nt_cost);

}  // namespace reachbench::grammar

#endif  // REACHBENCH_GRAMMAR_ANALYSIS_H_
