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

#ifndef REACHBENCH_CLI_EXPERIMENT_H_
#define REACHBENCH_CLI_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "reachbench/estimators/estimators.h"
#include "reachbench/fuzzer/campaign.h"
#include "reachbench/grammargen/generator.h"
#include "reachbench/util/json.h"

namespace reachbench::cli {

inline constexpr char kToolVersion[] = "0.1.0";

struct ExperimentConfig {
  grammargen::GenConfig generation;  // seed is replaced per program
  std::size_t programs = 1;
  fuzzer::CampaignConfig campaign;  // trial_seed is replaced per trial
  std::size_t seed_inputs = 64;
  int seed_depth = 12;
  std::size_t trials = 20;  // K
  bool count_error_exits = true;
  // Absolute unit sizes for the sensitivity stage, each a multiple of
  // campaign.unit_size. Fewer than two skips the stage.
  std::vector<std::size_t> unit_sizes;
  std::vector<estimators::Method> methods;  // empty = all
  // Empty = default_checkpoints(t_max).
  std::vector<std::size_t> checkpoints;
  double ci_level = 0.90;
  double alpha = 0.05;
  std::size_t bootstrap_replicates = 200;
  std::uint64_t master_seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency

  // Throws ConfigError.
  void validate() const;
};

Json to_json(const ExperimentConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig experiment_config_from_json(const Json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Sub-seeds, all derive_seed(master, label, index).
std::uint64_t program_seed(std::uint64_t master, std::size_t program);
std::uint64_t corpus_seed(std::uint64_t master, std::size_t program);
std::uint64_t campaign_master_seed(std::uint64_t master, std::size_t program);
std::uint64_t estimate_seed(std::uint64_t master, std::size_t program,
                            std::size_t trial);

struct ExperimentOutcome {
  std::size_t stages_run = 0;
  std::size_t stages_skipped = 0;
  std::vector<std::string> failures;  // one message per failed stage unit
  bool complete() const { return failures.empty(); }
};

// Runs generation, compilation, fuzzing, checkpoint estimation, the accuracy
// report and the sensitivity stage under `out`, then writes manifest.json.
// A stage unit is skipped when the previous manifest (same config digest)
// lists its outputs with matching digests. Failed units are recorded in the
// manifest and the remaining work continues.
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out);

}  // namespace reachbench::cli

#endif  // REACHBENCH_CLI_EXPERIMENT_H_
