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

#include "reachbench/fuzzer/seeds.h"

#include <set>

#include "reachbench/grammar/analysis.h"
#include "reachbench/util/random.h"

namespace reachbench::fuzzer {

using grammar::RuleId;
using grammar::Symbol;

SeedCorpus generate_seed_corpus(const grammar::Grammar& g, std::size_t n_seeds,
                                int max_depth, std::uint64_t rng_seed) {
  SeedCorpus corpus;
  if (n_seeds == 0) return corpus;
  g.validate();
  const auto cost = grammar::min_derivation_cost(g, grammar::RuleScope::kLive);
  // Live rules per nonterminal and the cheapest one.
  std::vector<std::vector<RuleId>> live(g.num_nonterminals());
  std::vector<RuleId> cheapest(g.num_nonterminals(), 0);
  for (grammar::NonterminalId nt = 0; nt < g.num_nonterminals(); ++nt) {
    double best = grammar::kUnproductive;
    for (RuleId id : g.rules_of(nt)) {
      if (g.is_dead_rule(id)) continue;
      live[nt].push_back(id);
      const double c = grammar::rule_cost(g.rule(id), cost);
      if (c < best) {
        best = c;
        cheapest[nt] = id;
      }
    }
  }
  const grammar::NonterminalId start = g.start_symbol();
  if (cost[start] == grammar::kUnproductive) return corpus;

  Rng rng(rng_seed);
  std::set<std::string> seen;
  struct Pending {
    Symbol symbol;
    int depth;
  };
  const std::size_t max_draws = 20 * n_seeds + 100;
  for (std::size_t draw = 0; draw < max_draws && corpus.inputs.size() < n_seeds;
       ++draw) {
    std::string out;
    std::vector<RuleId> used;
    std::vector<Pending> stack{{Symbol::nonterminal(start), 0}};
    while (!stack.empty()) {
      const Pending p = stack.back();
      stack.pop_back();
      if (p.symbol.is_terminal()) {
        out.push_back(static_cast<char>(p.symbol.id));
        continue;
      }
      if (!p.symbol.is_nonterminal()) continue;
      const auto& options = live[p.symbol.id];
      RuleId pick = cheapest[p.symbol.id];
      if (p.depth < max_depth) {
        // Only productive alternatives keep the derivation finite.
        std::vector<RuleId> ok;
        for (RuleId id : options) {
          if (grammar::rule_cost(g.rule(id), cost) != grammar::kUnproductive) {
            ok.push_back(id);
          }
        }
        pick = ok[rng.index(ok.size())];
      }
      used.push_back(pick);
      const auto& rhs = g.rule(pick).rhs;
      for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) {
        stack.push_back({*it, p.depth + 1});
      }
    }
    if (seen.insert(out).second) {
      corpus.inputs.push_back(std::move(out));
      corpus.provenance.push_back(std::move(used));
    }
  }
  return corpus;
}

}  // namespace reachbench::fuzzer
