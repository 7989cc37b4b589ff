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

#ifndef REACHBENCH_FUZZER_MUTATE_H_
#define REACHBENCH_FUZZER_MUTATE_H_

#include <cstdint>
#include <span>
#include <string>

#include "reachbench/util/json.h"
#include "reachbench/util/random.h"

namespace reachbench::fuzzer {

// Each round fires every operator independently with its rate. A mutant is
// built from a uniform number of rounds in [1, max_stack].
struct MutationPolicy {
  double flip_rate = 0.5;
  double insert_rate = 0.3;
  double delete_rate = 0.3;
  double splice_rate = 0.1;
  int max_stack = 4;
  std::size_t max_length = 256;
  // Chance that a written byte comes from the dictionary when one is given.
  double dictionary_probability = 0.5;

  // Throws ConfigError.
  void validate() const;
  friend bool operator==(const MutationPolicy&, const MutationPolicy&) = default;
};

struct MutationOps {
  std::uint64_t rounds = 0;
  std::uint64_t flips = 0;
  std::uint64_t inserts = 0;
  std::uint64_t deletes = 0;
  std::uint64_t splices = 0;
};

// `corpus` supplies splice partners and `dictionary` preferred bytes; both
// may be empty. When `ops` is given the fired operators are added to it.
std::string mutate_input(std::string_view input, const MutationPolicy& policy,
                         Rng& rng, std::span<const std::string> corpus = {},
                         std::span<const std::uint8_t> dictionary = {},
                         MutationOps* ops = nullptr);

Json to_json(const MutationPolicy& policy);
MutationPolicy mutation_policy_from_json(const Json& j);

}  // namespace reachbench::fuzzer

#endif  // REACHBENCH_FUZZER_MUTATE_H_
