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

#ifndef REACHBENCH_GRAMMARGEN_GENERATOR_H_
#define REACHBENCH_GRAMMARGEN_GENERATOR_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reachbench/grammar/grammar.h"
#include "reachbench/grammar/label.h"
#include "reachbench/util/json.h"

namespace reachbench::grammargen {

struct Range {
  int min = 1;
  int max = 1;
  friend bool operator==(const Range&, const Range&) = default;
};

// Fractions of nonterminals given each recursion kind; the rest get none.
struct RecursionMix {
  double direct = 0.1;
  double indirect = 0.1;
  double linear = 0.2;
  friend bool operator==(const RecursionMix&, const RecursionMix&) = default;
};

struct GenConfig {
  std::uint64_t seed = 1;
  int n_nonterminals = 10;  // including the unreachable ones
  Range rules_per_nonterminal{1, 3};
  Range rule_length{1, 4};
  int alphabet_size = 16;
  RecursionMix recursion_mix;
  int n_unreachable = 0;
  int n_dead_branches = 0;
  bool allow_epsilon = false;
  // Probability that a nonterminal with two or more rules gets an epsilon
  // alternative when allow_epsilon is set.
  double epsilon_probability = 0.3;
  // Probability that a free non-leading slot holds a (forward) nonterminal.
  double nonterminal_density = 0.3;
  int max_attempts = 1000;

  // Throws ConfigError on out-of-range values.
  void validate() const;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

Json to_json(const GenConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
GenConfig gen_config_from_json(const Json& json);

// Terminal bytes in allocation order: a-z, A-Z, 0-9, then the rest ascending.
std::vector<std::uint8_t> alphabet_bytes(int alphabet_size);

struct Generated {
  grammar::Grammar grammar;
  grammar::GroundTruthLabel label;
  int attempts = 0;
};

// Builds an LL(1) grammar with n_nonterminals - n_unreachable reachable
// nonterminals (N0 is the start), then applies inject_unreachable.
// Throws ConfigError for invalid configs and InfeasibleError naming the
// binding constraint when no grammar is found within max_attempts.
Generated generate_grammar(const GenConfig& config);

// Adds config.n_unreachable nonterminals (U0, U1, ...) forming a separate
// productive LL(1) component, and config.n_dead_branches dead-annotated
// rules on reachable hosts. Returns the new grammar and its label.
std::pair<grammar::Grammar, grammar::GroundTruthLabel> inject_unreachable(
    const grammar::Grammar& grammar, const grammar::GroundTruthLabel& label,
    const GenConfig& config);

// Config echo, seed, sizes and the compiled program's cyclomatic complexity.
Json generation_metadata(const GenConfig& config, const Generated& generated);

}  // namespace reachbench::grammargen

#endif  // REACHBENCH_GRAMMARGEN_GENERATOR_H_
