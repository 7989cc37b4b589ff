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

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "reachbench/grammar/analysis.h"
#include "reachbench/grammar/grammar.h"
#include "reachbench/grammar/serialize.h"
#include "reachbench/util/error.h"
#include "support/derivations.h"
#include "support/grammars.h"

namespace reachbench::grammar {
namespace {

using testing::parse_bnf;

TokenSet tokens(std::initializer_list<int> ts) {
  TokenSet s;
  for (int t : ts) s.set(t);
  return s;
}

NonterminalId nt(const Grammar& g, const char* name) {
  return *g.find_nonterminal(name);
}

TEST(FirstFollowTest, ExpressionGrammarHandValues) {
  const Grammar g = testing::expression_grammar();
  const PredictTable t = compute_first_follow(g);
  EXPECT_EQ(t.first[nt(g, "E")], tokens({'0', '1'}));
  EXPECT_TRUE(t.nullable[nt(g, "Es")]);
  EXPECT_FALSE(t.nullable[nt(g, "E")]);
  EXPECT_EQ(t.follow[nt(g, "Es")], tokens({kEndOfInput}));
  EXPECT_EQ(t.follow[nt(g, "D")], tokens({'+', kEndOfInput}));
  // Rules: 0 E->D Es, 1 Es->'+' D Es, 2 Es->eps, 3 D->'0', 4 D->'1'.
  EXPECT_EQ(t.predict[2], tokens({kEndOfInput}));
  EXPECT_EQ(t.predict[1], tokens({'+'}));
  EXPECT_EQ(t.predict[0], tokens({'0', '1'}));
}

// FIRST/FOLLOW/nullable recomputed from enumerated derivation trees.
void expect_matches_brute_force(const Grammar& g, int depth,
                                std::size_t max_len) {
  const PredictTable t = compute_first_follow(g);
  const std::size_t n = g.num_nonterminals();
  std::vector<TokenSet> first(n), follow(n);
  std::vector<bool> nullable(n, false);
  for (NonterminalId a = 0; a < n; ++a) {
    for (const auto& d : testing::enumerate_derivations(g, a, depth, max_len)) {
      if (d.yield.empty()) {
        nullable[a] = true;
      } else {
        first[a].set(static_cast<std::uint8_t>(d.yield[0]));
      }
    }
  }
  for (const auto& d :
       testing::enumerate_derivations(g, g.start_symbol(), depth, max_len)) {
    for (const auto& sp : d.spans) {
      follow[sp.nonterminal].set(
          sp.end < d.yield.size() ? static_cast<std::uint8_t>(d.yield[sp.end])
                                  : kEndOfInput);
    }
  }
  for (NonterminalId a = 0; a < n; ++a) {
    EXPECT_EQ(t.first[a], first[a]) << g.name(a);
    EXPECT_EQ(t.nullable[a], nullable[a]) << g.name(a);
    EXPECT_EQ(t.follow[a], follow[a]) << g.name(a);
  }
}

TEST(FirstFollowTest, ExpressionGrammarMatchesDerivationEnumerator) {
  expect_matches_brute_force(testing::expression_grammar(), 7, 7);
}

TEST(FirstFollowTest, BsearchMatchesDerivationEnumerator) {
  expect_matches_brute_force(testing::bsearch_grammar(), 8, 16);
}

TEST(FirstFollowTest, NestedNullableMatchesDerivationEnumerator) {
  expect_matches_brute_force(parse_bnf({
                                 "S -> A B 'c' | 'd' S",
                                 "A -> 'a' A | eps",
                                 "B -> 'b' | eps",
                             }),
                             6, 6);
}

TEST(FirstFollowTest, SingleRule) {
  const Grammar g = parse_bnf({"S -> 'a'"});
  const PredictTable t = compute_first_follow(g);
  EXPECT_EQ(t.first[0], tokens({'a'}));
  EXPECT_EQ(t.follow[0], tokens({kEndOfInput}));
}

TEST(FirstFollowTest, EpsilonOnly) {
  const Grammar g = parse_bnf({"S -> eps"});
  const PredictTable t = compute_first_follow(g);
  EXPECT_TRUE(t.nullable[0]);
  EXPECT_EQ(t.predict[0], tokens({kEndOfInput}));
}

TEST(FirstFollowTest, RecomputationIsIdempotent) {
  const Grammar g = testing::bsearch_grammar();
  const PredictTable a = compute_first_follow(g);
  const PredictTable b = compute_first_follow(g);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.follow, b.follow);
  EXPECT_EQ(a.nullable, b.nullable);
  EXPECT_EQ(a.predict, b.predict);
}

TEST(FirstFollowTest, RejectsUndefinedNonterminal) {
  Grammar g;
  const auto s = g.add_nonterminal("S");
  const auto a = g.add_nonterminal("A");
  g.add_rule(s, {Symbol::nonterminal(a)});
  g.set_start(s);
  try {
    compute_first_follow(g);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("<A>"), std::string::npos);
  }
}

TEST(FirstFollowTest, RejectsUndeclaredTerminal) {
  Grammar g;
  const auto s = g.add_nonterminal("S");
  g.add_rule(s, {Symbol::terminal('z')});
  g.set_start(s);
  EXPECT_THROW(compute_first_follow(g), ValidationError);
}

TEST(Ll1Test, FirstFirstConflict) {
  const Grammar g = parse_bnf({"A -> 'a' B | 'a' C", "B -> 'b'", "C -> 'c'"});
  const Ll1Verdict v = check_ll1(g, compute_first_follow(g));
  ASSERT_EQ(v.conflicts.size(), 1u);
  EXPECT_EQ(v.conflicts[0].nonterminal, 0u);
  EXPECT_EQ(v.conflicts[0].overlap, tokens({'a'}));
}

TEST(Ll1Test, FirstFollowConflict) {
  const Grammar g = parse_bnf({"S -> A 'a'", "A -> 'a' | eps"});
  const Ll1Verdict v = check_ll1(g, compute_first_follow(g));
  ASSERT_EQ(v.conflicts.size(), 1u);
  EXPECT_EQ(v.conflicts[0].nonterminal, nt(g, "A"));
  EXPECT_EQ(v.conflicts[0].overlap, tokens({'a'}));
}

TEST(Ll1Test, BsearchIsLl1) {
  const Grammar g = testing::bsearch_grammar();
  EXPECT_TRUE(check_ll1(g, compute_first_follow(g)).ok());
}

TEST(Ll1Test, LiteralBsearchTranscriptionConflictsOnLoopHead) {
  const Grammar g = testing::bsearch_literal_grammar();
  const Ll1Verdict v = check_ll1(g, compute_first_follow(g));
  ASSERT_EQ(v.conflicts.size(), 1u);
  EXPECT_EQ(v.conflicts[0].nonterminal, nt(g, "while.3"));
  EXPECT_EQ(v.conflicts[0].overlap, tokens({'b'}));
}

TEST(Ll1Test, ReportsAllConflicts) {
  const Grammar g = parse_bnf({"S -> 'a' | 'a' 'b' | 'a' 'c'"});
  EXPECT_EQ(check_ll1(g, compute_first_follow(g)).conflicts.size(), 3u);
}

TEST(Ll1Test, LiveScopeIgnoresDeadRules) {
  Grammar g = parse_bnf({"S -> 'a' | 'a' 'b'"});
  g.annotations().dead_rules = {1};
  const PredictTable live = compute_first_follow(g, RuleScope::kLive);
  EXPECT_TRUE(check_ll1(g, live, RuleScope::kLive).ok());
  EXPECT_FALSE(check_ll1(g, compute_first_follow(g)).ok());
}

TEST(ReachabilityTest, UnreferencedNonterminal) {
  const Grammar g = parse_bnf({"S -> 'a' A", "A -> 'b'", "B -> 'c'"});
  EXPECT_EQ(reachable_nonterminals(g),
            (std::set<NonterminalId>{nt(g, "S"), nt(g, "A")}));
}

TEST(ReachabilityTest, ChainClosure) {
  const Grammar g = parse_bnf({"S -> A", "A -> B", "B -> 'x'"});
  EXPECT_EQ(reachable_nonterminals(g).size(), 3u);
}

Grammar random_grammar(std::mt19937_64& rng, int n) {
  Grammar g;
  for (int i = 0; i < n; ++i) g.add_nonterminal("X" + std::to_string(i));
  g.add_terminal('t');
  std::uniform_int_distribution<int> pick(0, n - 1), coin(0, 3), len(1, 3);
  for (int i = 0; i < n; ++i) {
    const int rules = 1 + coin(rng) % 2;
    for (int r = 0; r < rules; ++r) {
      std::vector<Symbol> rhs;
      const int l = len(rng);
      for (int k = 0; k < l; ++k) {
        rhs.push_back(coin(rng) == 0 ? Symbol::nonterminal(pick(rng))
                                     : Symbol::terminal('t'));
      }
      g.add_rule(i, rhs);
    }
  }
  g.set_start(0);
  return g;
}

TEST(ReachabilityTest, MatchesTransitiveClosureOnRandomGrammars) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Grammar g = random_grammar(rng, 10);
    // Warshall closure of the reference relation.
    bool reach[10][10] = {};
    for (const Rule& r : g.rules()) {
      for (const Symbol& s : r.rhs) {
        if (s.is_nonterminal()) reach[r.lhs][s.id] = true;
      }
    }
    for (int k = 0; k < 10; ++k) {
      for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
          reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
        }
      }
    }
    std::set<NonterminalId> expected{0};
    for (NonterminalId j = 0; j < 10; ++j) {
      if (reach[0][j]) expected.insert(j);
    }
    EXPECT_EQ(reachable_nonterminals(g), expected) << "trial " << trial;
  }
}

TEST(ReachabilityTest, ExcludesNonterminalsReferencedOnlyFromUnreachable) {
  const Grammar g =
      parse_bnf({"S -> 'a'", "C -> 'c' B", "B -> 'b'"});
  const auto r = reachable_nonterminals(g);
  EXPECT_EQ(r.count(nt(g, "B")), 0u);
  EXPECT_EQ(r.count(nt(g, "C")), 0u);
}

TEST(ReachabilityTest, MonotoneUnderRuleAddition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Grammar g = random_grammar(rng, 8);
    const auto before = reachable_nonterminals(g);
    std::uniform_int_distribution<int> pick(0, 7);
    g.add_rule(pick(rng), {Symbol::nonterminal(pick(rng))});
    const auto after = reachable_nonterminals(g);
    for (NonterminalId a : before) EXPECT_EQ(after.count(a), 1u);
    for (NonterminalId a : after) EXPECT_LT(a, g.num_nonterminals());
  }
}

TEST(ProductivityTest, Examples) {
  EXPECT_EQ(check_productivity(parse_bnf({"S -> 'a'"})),
            (std::set<NonterminalId>{0}));
  EXPECT_TRUE(check_productivity(parse_bnf({"S -> S"})).empty());
  EXPECT_EQ(check_productivity(parse_bnf({"S -> 'a' A", "A -> 'b' A | 'c'"}))
                .size(),
            2u);
}

TEST(ProductivityTest, MinimalCostRulesReferenceCheaperNonterminals) {
  const Grammar g = testing::bsearch_grammar();
  const auto cost = min_derivation_cost(g);
  EXPECT_EQ(cost[nt(g, "if.8")], 1.0);
  EXPECT_EQ(cost[nt(g, "while.3")], 1.0);
  EXPECT_EQ(cost[nt(g, "bsearch")], 2.0);
  for (const Rule& r : g.rules()) {
    if (rule_cost(r, cost) != cost[r.lhs]) continue;
    for (const Symbol& s : r.rhs) {
      if (s.is_nonterminal()) EXPECT_LT(cost[s.id], cost[r.lhs]);
    }
  }
}

TEST(SerializeTest, RoundTripIsByteIdentical) {
  Grammar g = testing::bsearch_grammar();
  g.annotations().dead_rules = {2};
  const std::string text = serialize_grammar(g);
  const Grammar back = parse_grammar(text);
  EXPECT_TRUE(back == g);
  EXPECT_EQ(serialize_grammar(back), text);
}

TEST(SerializeTest, EpsilonAndAnnotationsSurvive) {
  Grammar g = parse_bnf({"S -> 'a' S | eps", "U -> 'u'"});
  g.annotations().unreachable = {1};
  const Grammar back = parse_grammar(serialize_grammar(g));
  EXPECT_TRUE(back.rule(1).is_epsilon());
  EXPECT_EQ(back.annotations().unreachable, std::vector<NonterminalId>{1});
}

TEST(SerializeTest, MalformedTextReportsPosition) {
  try {
    parse_grammar("{\n  \"format\": \"reachbench-grammar\",\n  oops\n}\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SerializeTest, RejectsUnknownNonterminalInRule) {
  const std::string text =
      "{\"format\":\"reachbench-grammar\",\"version\":1,\"terminals\":[97],"
      "\"nonterminals\":[\"S\"],\"start\":\"S\",\"rules\":[{\"id\":0,"
      "\"lhs\":\"S\",\"rhs\":[\"Q\"]}],\"annotations\":{\"unreachable\":[],"
      "\"dead_rules\":[]}}";
  EXPECT_THROW(parse_grammar(text), ValidationError);
}

}  // namespace
}  // namespace reachbench::grammar
