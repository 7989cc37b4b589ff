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

#ifndef REACHBENCH_FUZZER_SEEDS_H_
#define REACHBENCH_FUZZER_SEEDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "reachbench/grammar/grammar.h"

namespace reachbench::fuzzer {

struct SeedCorpus {
  std::vector<std::string> inputs;
  // Rules applied by the leftmost derivation of each input, in order.
  std::vector<std::vector<grammar::RuleId>> provenance;
};

// Random leftmost derivations over live rules. Below max_depth the rule is
// drawn uniformly; deeper, the rule of minimal derivation cost is taken, so
// every derivation terminates. Duplicates are dropped, so fewer than
// n_seeds inputs come back when the language is small.
SeedCorpus generate_seed_corpus(const grammar::Grammar& grammar,
                                std::size_t n_seeds, int max_depth,
                                std::uint64_t rng_seed);

}  // namespace reachbench::fuzzer

#endif  // REACHBENCH_FUZZER_SEEDS_H_
