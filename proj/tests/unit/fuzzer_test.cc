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

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "gtest/gtest.h"
#include "reachbench/codegen/executor.h"
#include "reachbench/codegen/program.h"
#include "reachbench/fuzzer/campaign.h"
#include "reachbench/fuzzer/mutate.h"
#include "reachbench/fuzzer/seeds.h"
#include "reachbench/grammar/label.h"
#include "reachbench/grammargen/generator.h"
#include "reachbench/util/error.h"
#include "support/grammars.h"

namespace reachbench::fuzzer {
namespace {

using codegen::ParserProgram;
using grammar::Grammar;

ParserProgram compile(const Grammar& g) {
  return codegen::compile_to_parser(g, grammar::derive_label(g));
}

Grammar single_a() { return testing::parse_bnf({"S -> 'a'"}); }

bool accepted(const ParserProgram& p, const std::string& s) {
  const std::span<const std::uint8_t> bytes(
      reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
  return codegen::execute_parser(p, bytes).verdict == codegen::Verdict::kAccept;
}

// Replays a leftmost derivation and returns its yield.
std::string replay(const Grammar& g, const std::vector<grammar::RuleId>& rules) {
  std::vector<grammar::Symbol> form{
      grammar::Symbol::nonterminal(g.start_symbol())};
  std::size_t next = 0;
  for (std::size_t i = 0; i < form.size();) {
    if (!form[i].is_nonterminal()) {
      ++i;
      continue;
    }
    EXPECT_LT(next, rules.size());
    if (next >= rules.size()) return {};
    const auto& rule = g.rule(rules[next++]);
    EXPECT_EQ(rule.lhs, form[i].id);
    form.erase(form.begin() + static_cast<std::ptrdiff_t>(i));
    if (!rule.is_epsilon()) {
      form.insert(form.begin() + static_cast<std::ptrdiff_t>(i),
                  rule.rhs.begin(), rule.rhs.end());
    }
  }
  EXPECT_EQ(next, rules.size());
  std::string out;
  for (const auto& s : form) {
    if (s.is_terminal()) out.push_back(static_cast<char>(s.id));
  }
  return out;
}

TEST(SeedsTest, SingleTerminalDeduplicates) {
  const SeedCorpus c = generate_seed_corpus(single_a(), 10, 5, 1);
  EXPECT_EQ(c.inputs, std::vector<std::string>{"a"});
}

TEST(SeedsTest, ZeroSeedsIsEmpty) {
  EXPECT_TRUE(generate_seed_corpus(single_a(), 0, 5, 1).inputs.empty());
}

TEST(SeedsTest, ExpressionSeedsAreInLanguage) {
  const Grammar g = testing::expression_grammar();
  const ParserProgram p = compile(g);
  const SeedCorpus c = generate_seed_corpus(g, 40, 3, 7);
  ASSERT_GT(c.inputs.size(), 5u);
  const std::regex lang("[01](\\+[01])*");
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    EXPECT_TRUE(std::regex_match(c.inputs[i], lang)) << c.inputs[i];
    EXPECT_TRUE(accepted(p, c.inputs[i])) << c.inputs[i];
    EXPECT_EQ(replay(g, c.provenance[i]), c.inputs[i]);
  }
}

TEST(SeedsTest, DeterministicPerSeed) {
  const Grammar g = testing::expression_grammar();
  EXPECT_EQ(generate_seed_corpus(g, 20, 4, 3).inputs,
            generate_seed_corpus(g, 20, 4, 3).inputs);
  EXPECT_NE(generate_seed_corpus(g, 20, 4, 3).inputs,
            generate_seed_corpus(g, 20, 4, 4).inputs);
}

TEST(SeedsTest, GeneratedGrammarSeedsAccepted) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    grammargen::GenConfig gc;
    gc.seed = seed;
    gc.n_nonterminals = 15;
    gc.n_unreachable = 2;
    gc.n_dead_branches = 2;
    gc.allow_epsilon = seed % 2 == 0;
    const auto gen = grammargen::generate_grammar(gc);
    const ParserProgram p = codegen::compile_to_parser(gen.grammar, gen.label);
    const SeedCorpus c = generate_seed_corpus(gen.grammar, 30, 4, seed);
    ASSERT_FALSE(c.inputs.empty());
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
      EXPECT_TRUE(accepted(p, c.inputs[i])) << "seed " << seed;
      EXPECT_EQ(replay(gen.grammar, c.provenance[i]), c.inputs[i]);
      for (auto r : c.provenance[i]) EXPECT_FALSE(gen.grammar.is_dead_rule(r));
    }
  }
}

TEST(MutateTest, ZeroRatesIsIdentity) {
  MutationPolicy p;
  p.flip_rate = p.insert_rate = p.delete_rate = p.splice_rate = 0;
  Rng rng(1);
  const std::vector<std::string> corpus{"xyz"};
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(mutate_input("hello", p, rng, corpus), "hello");
  }
}

TEST(MutateTest, DeleteOnlyOutcomes) {
  MutationPolicy p;
  p.flip_rate = p.insert_rate = p.splice_rate = 0;
  p.delete_rate = 1;
  Rng rng(2);
  std::set<std::string> outcomes;
  for (int i = 0; i < 2000; ++i) outcomes.insert(mutate_input("ab", p, rng));
  EXPECT_EQ(outcomes, (std::set<std::string>{"a", "b", ""}));
}

TEST(MutateTest, OperatorMixMatchesRates) {
  MutationPolicy p;
  p.flip_rate = 0.4;
  p.insert_rate = 0.25;
  p.delete_rate = 0.15;
  p.splice_rate = 0.1;
  Rng rng(3);
  const std::vector<std::string> corpus{"abc", "0+1"};
  MutationOps ops;
  for (int i = 0; i < 10000; ++i) {
    mutate_input("0+1+0", p, rng, corpus, {}, &ops);
  }
  const double n = static_cast<double>(ops.rounds);
  EXPECT_NEAR(ops.flips / n, p.flip_rate, 0.05);
  EXPECT_NEAR(ops.inserts / n, p.insert_rate, 0.05);
  EXPECT_NEAR(ops.deletes / n, p.delete_rate, 0.05);
  EXPECT_NEAR(ops.splices / n, p.splice_rate, 0.05);
}

TEST(MutateTest, LengthBounded) {
  MutationPolicy p;
  p.insert_rate = 1;
  p.splice_rate = 1;
  p.max_length = 8;
  Rng rng(4);
  const std::vector<std::string> corpus{std::string(50, 'q')};
  for (int i = 0; i < 500; ++i) {
    EXPECT_LE(mutate_input("abcdefg", p, rng, corpus).size(), 8u);
  }
}

TEST(MutateTest, DictionaryBytesOnly) {
  MutationPolicy p;
  p.flip_rate = 1;
  p.insert_rate = 1;
  p.delete_rate = p.splice_rate = 0;
  p.dictionary_probability = 1;
  Rng rng(5);
  const std::vector<std::uint8_t> dict{'x', 'y'};
  for (int i = 0; i < 300; ++i) {
    for (char ch : mutate_input("xx", p, rng, {}, dict)) {
      EXPECT_TRUE(ch == 'x' || ch == 'y');
    }
  }
}

TEST(MutateTest, PolicyValidation) {
  MutationPolicy p;
  p.flip_rate = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_THROW(mutation_policy_from_json(Json{{"bogus", 1}}), ConfigError);
  MutationPolicy q;
  q.splice_rate = 0.7;
  EXPECT_EQ(mutation_policy_from_json(to_json(q)), q);
}

CampaignConfig small_config(std::uint64_t seed) {
  CampaignConfig c;
  c.trial_seed = seed;
  c.budget = 100;
  c.unit_size = 10;
  return c;
}

TEST(CampaignTest, UnitBookkeeping) {
  const Grammar g = testing::expression_grammar();
  const ParserProgram p = compile(g);
  const SeedCorpus seeds = generate_seed_corpus(g, 5, 3, 1);
  const CampaignLog log = run_campaign(p, seeds, small_config(9));
  ASSERT_EQ(log.units(), 10u);
  EXPECT_EQ(log.executions, 100u);
  std::set<codegen::ElementId> all;
  for (const auto& u : log.unit_coverage) {
    EXPECT_TRUE(std::is_sorted(u.begin(), u.end()));
    EXPECT_EQ(std::set<codegen::ElementId>(u.begin(), u.end()).size(), u.size());
    all.insert(u.begin(), u.end());
  }
  EXPECT_EQ(all, std::set<codegen::ElementId>(log.discovery_order.begin(),
                                              log.discovery_order.end()));
  EXPECT_TRUE(std::is_sorted(log.discovery_curve.begin(), log.discovery_curve.end()));
  EXPECT_EQ(log.discovery_curve.back(), log.discovered());
}

TEST(CampaignTest, UnitPartitionMatchesDiscoveryStream) {
  const Grammar g = testing::bsearch_grammar();
  const ParserProgram p = compile(g);
  CampaignConfig c = small_config(11);
  c.budget = 3000;
  c.unit_size = 7;  // truncated to 2996
  const CampaignLog log =
      run_campaign(p, generate_seed_corpus(g, 4, 4, 2), c);
  ASSERT_EQ(log.units(), 3000u / 7u);
  EXPECT_EQ(log.executions, 3000u / 7u * 7u);
  std::set<codegen::ElementId> before;
  for (std::size_t j = 0; j < log.units(); ++j) {
    std::set<codegen::ElementId> fresh;
    for (auto id : log.unit_coverage[j]) {
      if (!before.count(id)) fresh.insert(id);
    }
    std::set<codegen::ElementId> from_stream;
    for (std::size_t k = 0; k < log.discovery_order.size(); ++k) {
      if (log.discovery_execution[k] / 7 == j) {
        from_stream.insert(log.discovery_order[k]);
      }
    }
    EXPECT_EQ(fresh, from_stream) << "unit " << j;
    before.insert(log.unit_coverage[j].begin(), log.unit_coverage[j].end());
    EXPECT_EQ(log.discovery_curve[j], before.size());
  }
}

TEST(CampaignTest, CorpusGrowsOnlyOnNovelty) {
  const Grammar g = testing::bsearch_grammar();
  const ParserProgram p = compile(g);
  const SeedCorpus seeds = generate_seed_corpus(g, 3, 4, 5);
  CampaignConfig c = small_config(3);
  c.budget = 5000;
  c.unit_size = 100;
  const CampaignLog log = run_campaign(p, seeds, c);
  std::set<std::uint64_t> novel_mutants;
  for (auto e : log.discovery_execution) {
    if (e >= seeds.inputs.size()) novel_mutants.insert(e);
  }
  EXPECT_EQ(log.corpus_size, seeds.inputs.size() + novel_mutants.size());
}

TEST(CampaignTest, SingleRuleReachesErrorExit) {
  const Grammar g = single_a();
  const ParserProgram p = compile(g);
  ASSERT_EQ(p.ground_truth.size(), 2u);
  const SeedCorpus seeds = generate_seed_corpus(g, 1, 3, 1);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CampaignConfig c;
    c.trial_seed = seed;
    c.budget = 10000;
    c.unit_size = 100;
    const CampaignLog log = run_campaign(p, seeds, c);
    EXPECT_EQ(log.discovered(), 2u) << "trial seed " << seed;
  }
}

TEST(CampaignTest, DeterministicPerTrialSeed) {
  const Grammar g = testing::bsearch_grammar();
  const ParserProgram p = compile(g);
  const SeedCorpus seeds = generate_seed_corpus(g, 3, 4, 5);
  CampaignConfig c = small_config(77);
  c.budget = 2000;
  c.scheduling = Scheduling::kNovelty;
  const CampaignLog a = run_campaign(p, seeds, c);
  const CampaignLog b = run_campaign(p, seeds, c);
  EXPECT_EQ(a.unit_coverage, b.unit_coverage);
  EXPECT_EQ(a.discovery_order, b.discovery_order);
  EXPECT_EQ(a.corpus_size, b.corpus_size);
}

TEST(CampaignTest, EmptyCorpusFallsBackToEmptyInput) {
  const Grammar g = single_a();
  const ParserProgram p = compile(g);
  CampaignConfig c = small_config(1);
  c.budget = 1;
  c.unit_size = 1;
  const CampaignLog log = run_campaign(p, SeedCorpus{}, c);
  ASSERT_EQ(log.units(), 1u);
  // The empty input reaches only the error exit of S.
  ASSERT_EQ(log.unit_coverage[0].size(), 1u);
  EXPECT_EQ(p.elements[log.unit_coverage[0][0]].kind,
            grammar::ElementKind::kErrorExit);
}

TEST(CampaignTest, InvalidBudgets) {
  const ParserProgram p = compile(single_a());
  CampaignConfig c = small_config(1);
  c.budget = 0;
  EXPECT_THROW(run_campaign(p, {}, c), ConfigError);
  c.budget = 10;
  c.unit_size = 0;
  EXPECT_THROW(run_campaign(p, {}, c), ConfigError);
  c.unit_size = 11;
  EXPECT_THROW(run_campaign(p, {}, c), ConfigError);
}

TEST(CampaignTest, CoverageWithinGroundTruth) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    grammargen::GenConfig gc;
    gc.seed = seed;
    gc.n_nonterminals = 20;
    gc.n_unreachable = 3;
    gc.n_dead_branches = 3;
    gc.allow_epsilon = true;
    const auto gen = grammargen::generate_grammar(gc);
    const ParserProgram p = codegen::compile_to_parser(gen.grammar, gen.label);
    CampaignConfig c;
    c.trial_seed = seed;
    c.budget = 20000;
    c.unit_size = 500;
    c.dictionary = gen.grammar.terminals();
    const CampaignLog log =
        run_campaign(p, generate_seed_corpus(gen.grammar, 10, 4, seed), c);
    for (auto id : log.discovery_order) {
      EXPECT_TRUE(p.in_ground_truth(id)) << "seed " << seed << " element " << id;
    }
  }
}

TEST(CampaignTest, ParallelTrialsMatchSequential) {
  const Grammar g = testing::bsearch_grammar();
  const ParserProgram p = compile(g);
  const SeedCorpus seeds = generate_seed_corpus(g, 3, 4, 5);
  CampaignConfig c = small_config(0);
  c.budget = 1000;
  const auto logs = run_trials(p, seeds, c, 123, 6, 4);
  ASSERT_EQ(logs.size(), 6u);
  for (std::size_t k = 0; k < logs.size(); ++k) {
    CampaignConfig ck = c;
    ck.trial_seed = trial_seed(123, k);
    EXPECT_EQ(logs[k].unit_coverage, run_campaign(p, seeds, ck).unit_coverage);
  }
}

TEST(CampaignTest, ConfigJsonRoundTrip) {
  CampaignConfig c = small_config(5);
  c.scheduling = Scheduling::kNovelty;
  c.dictionary = {'a', 'b'};
  const CampaignConfig d = campaign_config_from_json(to_json(c));
  EXPECT_EQ(to_json(d), to_json(c));
  EXPECT_THROW(campaign_config_from_json(Json{{"budgett", 3}}), ConfigError);
}

}  // namespace
}  // namespace reachbench::fuzzer
