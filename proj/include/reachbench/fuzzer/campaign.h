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

#ifndef REACHBENCH_FUZZER_CAMPAIGN_H_
#define REACHBENCH_FUZZER_CAMPAIGN_H_

#include <cstdint>
#include <vector>

#include "reachbench/codegen/program.h"
#include "reachbench/fuzzer/mutate.h"
#include "reachbench/fuzzer/seeds.h"
#include "reachbench/util/json.h"

namespace reachbench::fuzzer {

using codegen::ElementId;

enum class Scheduling : std::uint8_t {
  kUniform,  // every corpus entry equally likely
  kNovelty,  // weight 1 + elements first found by the entry
};

struct CampaignConfig {
  std::uint64_t trial_seed = 1;
  std::uint64_t budget = 100'000;
  std::uint64_t unit_size = 1'000;
  MutationPolicy policy;
  Scheduling scheduling = Scheduling::kUniform;
  std::uint64_t step_budget = 1'000'000;
  // Bytes preferred by insert and flip, usually the grammar's terminals.
  std::vector<std::uint8_t> dictionary;
  // Closes units on elapsed time instead of execution counts; the budget
  // still caps executions. Not reproducible.
  bool wall_clock_units = false;
  double unit_seconds = 1.0;

  // Throws ConfigError.
  void validate() const;
};

struct CampaignLog {
  std::vector<std::vector<ElementId>> unit_coverage;  // ascending ids per unit
  std::vector<std::size_t> discovery_curve;  // cumulative distinct after unit j
  // Elements in first-covered order, with the execution that found each.
  std::vector<ElementId> discovery_order;
  std::vector<std::uint64_t> discovery_execution;
  std::uint64_t executions = 0;
  std::uint64_t unit_size = 0;
  std::uint64_t accepted = 0;
  std::uint64_t budget_exhausted = 0;
  std::size_t corpus_size = 0;
  double seconds = 0.0;
  double executions_per_second = 0.0;

  std::size_t units() const { return unit_coverage.size(); }
  std::size_t discovered() const { return discovery_order.size(); }
};

// Coverage-guided blackbox loop: seeds run first, then mutants of weighted
// corpus picks. An input joins the corpus iff it covers an element not seen
// before in the trial. A budget not divisible by the unit size is truncated
// with a warning. Deterministic per trial_seed unless wall_clock_units.
CampaignLog run_campaign(const codegen::ParserProgram& program,
                         const SeedCorpus& corpus, const CampaignConfig& config);

// Runs `trials` campaigns with trial seeds derive_seed(master, "trial", k)
// on up to `threads` workers. Results are in trial order.
std::vector<CampaignLog> run_trials(const codegen::ParserProgram& program,
                                    const SeedCorpus& corpus,
                                    const CampaignConfig& config,
                                    std::uint64_t master_seed,
                                    std::size_t trials, std::size_t threads);

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

// Summary record: units, discovered, executions, throughput, config echo.
Json campaign_summary(const CampaignLog& log, const CampaignConfig& config);
Json to_json(const CampaignConfig& config);
// Reads the keys written by to_json; unknown keys are rejected.
CampaignConfig campaign_config_from_json(const Json& j);

}  // namespace reachbench::fuzzer

#endif  // REACHBENCH_FUZZER_CAMPAIGN_H_
