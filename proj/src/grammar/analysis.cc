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

#include "reachbench/grammar/analysis.h"

#include <algorithm>

namespace reachbench::grammar {
namespace {

std::vector<bool> included_rules(const Grammar& g, RuleScope scope) {
  std::vector<bool> in(g.num_rules(), true);
  if (scope == RuleScope::kLive) {
    for (RuleId id : g.annotations().dead_rules) {
      if (id < in.size()) in[id] = false;
    }
  }
  return in;
}

}  // namespace

TokenSet first_of_sequence(const PredictTable& table,
                           std::span<const Symbol> symbols, bool* nullable) {
  TokenSet out;
  bool all_nullable = true;
  for (const Symbol& s : symbols) {
    if (s.is_epsilon()) continue;
    if (s.is_terminal()) {
      out.set(s.id);
      all_nullable = false;
      break;
    }
    if (s.kind == SymbolKind::kEndOfInput) {
      out.set(kEndOfInput);
      all_nullable = false;
      break;
    }
    out |= table.first[s.id];
    if (!table.nullable[s.id]) {
      all_nullable = false;
      break;
    }
  }
  if (nullable != nullptr) *nullable = all_nullable;
  return out;
}

PredictTable compute_first_follow(const Grammar& grammar, RuleScope scope) {
  grammar.validate();
  const std::size_t n = grammar.num_nonterminals();
  const auto in = included_rules(grammar, scope);
  PredictTable table;
  table.first.assign(n, TokenSet());
  table.follow.assign(n, TokenSet());
  table.nullable.assign(n, false);

  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : grammar.rules()) {
      if (!in[r.id]) continue;
      bool nullable = false;
      const TokenSet f = first_of_sequence(table, r.rhs, &nullable);
      const TokenSet merged = table.first[r.lhs] | f;
      if (merged != table.first[r.lhs]) {
        table.first[r.lhs] = merged;
        changed = true;
      }
      if (nullable && !table.nullable[r.lhs]) {
        table.nullable[r.lhs] = true;
        changed = true;
      }
    }
  }

  table.follow[grammar.start_symbol()].set(kEndOfInput);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : grammar.rules()) {
      if (!in[r.id]) continue;
      for (std::size_t i = 0; i < r.rhs.size(); ++i) {
        if (!r.rhs[i].is_nonterminal()) continue;
        const NonterminalId b = r.rhs[i].id;
        bool rest_nullable = false;
        TokenSet add = first_of_sequence(
            table, std::span<const Symbol>(r.rhs).subspan(i + 1),
            &rest_nullable);
        if (rest_nullable) add |= table.follow[r.lhs];
        const TokenSet merged = table.follow[b] | add;
        if (merged != table.follow[b]) {
          table.follow[b] = merged;
          changed = true;
        }
      }
    }
  }

  table.predict.assign(grammar.num_rules(), TokenSet());
  for (const Rule& r : grammar.rules()) {
    bool nullable = false;
    TokenSet p = first_of_sequence(table, r.rhs, &nullable);
    if (nullable) p |= table.follow[r.lhs];
    table.predict[r.id] = p;
  }
  return table;
}

Ll1Verdict check_ll1(const Grammar& grammar, const PredictTable& table,
                     RuleScope scope) {
  const auto in = included_rules(grammar, scope);
  Ll1Verdict verdict;
  for (NonterminalId nt = 0; nt < grammar.num_nonterminals(); ++nt) {
    const auto rules = grammar.rules_of(nt);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!in[rules[i]]) continue;
      for (std::size_t j = i + 1; j < rules.size(); ++j) {
        if (!in[rules[j]]) continue;
        const TokenSet overlap =
            table.predict[rules[i]] & table.predict[rules[j]];
        if (overlap.any()) {
          verdict.conflicts.push_back({nt, rules[i], rules[j], overlap});
        }
      }
    }
  }
  return verdict;
}

std::vector<bool> reachable_mask(const Grammar& grammar, RuleScope scope) {
  const auto in = included_rules(grammar, scope);
  std::vector<bool> seen(grammar.num_nonterminals(), false);
  if (!grammar.start()) return seen;
  std::vector<NonterminalId> stack{*grammar.start()};
  seen[*grammar.start()] = true;
  while (!stack.empty()) {
    const NonterminalId nt = stack.back();
    stack.pop_back();
    for (RuleId id : grammar.rules_of(nt)) {
      if (!in[id]) continue;
      for (const Symbol& s : grammar.rule(id).rhs) {
        if (s.is_nonterminal() && !seen[s.id]) {
          seen[s.id] = true;
          stack.push_back(s.id);
        }
      }
    }
  }
  return seen;
}

std::set<NonterminalId> reachable_nonterminals(const Grammar& grammar) {
  const auto mask = reachable_mask(grammar);
  std::set<NonterminalId> out;
  for (NonterminalId nt = 0; nt < mask.size(); ++nt) {
    if (mask[nt]) out.insert(nt);
  }
  return out;
}

double rule_cost(const Rule& rule, const std::vector<double>& nt_cost) {
  double total = 1.0;
  for (const Symbol& s : rule.rhs) {
    if (s.is_nonterminal()) total += nt_cost[s.id];
  }
  return total;
}

std::vector<double> min_derivation_cost(const Grammar& grammar,
                                        RuleScope scope) {
  const auto in = included_rules(grammar, scope);
  std::vector<double> cost(grammar.num_nonterminals(), kUnproductive);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : grammar.rules()) {
      if (!in[r.id]) continue;
      const double c = rule_cost(r, cost);
      if (c < cost[r.lhs]) {
        cost[r.lhs] = c;
        changed = true;
      }
    }
  }
  return cost;
}

std::vector<bool> productive_mask(const Grammar& grammar, RuleScope scope) {
  const auto cost = min_derivation_cost(grammar, scope);
  std::vector<bool> out(cost.size());
  for (std::size_t i = 0; i < cost.size(); ++i) {
    out[i] = cost[i] != kUnproductive;
  }
  return out;
}

std::set<NonterminalId> check_productivity(const Grammar& grammar) {
  const auto mask = productive_mask(grammar);
  std::set<NonterminalId> out;
  for (NonterminalId nt = 0; nt < mask.size(); ++nt) {
    if (mask[nt]) out.insert(nt);
  }
  return out;
}

}  // namespace reachbench::grammar
