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

#include "reachbench/fuzzer/campaign.h"

#include <algorithm>
#include <chrono>

#include <spdlog/spdlog.h>

#include "reachbench/codegen/executor.h"
#include "reachbench/util/error.h"
#include "reachbench/util/parallel.h"
#include "reachbench/util/seed.h"

namespace reachbench::fuzzer {
namespace {

class WeightedCorpus {
 public:
  explicit WeightedCorpus(Scheduling scheduling) : scheduling_(scheduling) {}

  void add(std::string input, std::size_t novelty) {
    inputs_.push_back(std::move(input));
    const double w =
        scheduling_ == Scheduling::kNovelty ? 1.0 + static_cast<double>(novelty)
                                            : 1.0;
    cumulative_.push_back((cumulative_.empty() ? 0.0 : cumulative_.back()) + w);
  }

  const std::string& pick(Rng& rng) const {
    if (scheduling_ == Scheduling::kUniform) {
      return inputs_[rng.index(inputs_.size())];
    }
    const double x = rng.uniform01() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    return inputs_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

  const std::vector<std::string>& inputs() const { return inputs_; }
  std::size_t size() const { return inputs_.size(); }

 private:
  Scheduling scheduling_;
  std::vector<std::string> inputs_;
  std::vector<double> cumulative_;
};

const char* scheduling_name(Scheduling s) {
  return s == Scheduling::kNovelty ? "novelty" : "uniform";
}

}  // namespace

void CampaignConfig::validate() const {
  if (budget == 0) throw ConfigError("campaign budget must be positive");
  if (unit_size == 0) throw ConfigError("unit size must be >= 1");
  if (!wall_clock_units && unit_size > budget) {
    throw ConfigError("unit size " + std::to_string(unit_size) +
                      " exceeds budget " + std::to_string(budget));
  }
  if (wall_clock_units && !(unit_seconds > 0.0)) {
    throw ConfigError("unit_seconds must be positive");
  }
  if (step_budget == 0) throw ConfigError("step budget must be positive");
  policy.validate();
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return derive_seed(master_seed, "trial", trial);
}

CampaignLog run_campaign(const codegen::ParserProgram& program,
                         const SeedCorpus& seeds, const CampaignConfig& config) {
  config.validate();
  std::uint64_t budget = config.budget;
  if (!config.wall_clock_units && budget % config.unit_size != 0) {
    const std::uint64_t truncated = budget - budget % config.unit_size;
    spdlog::warn("budget {} is not a multiple of unit size {}; truncating to {}",
                 budget, config.unit_size, truncated);
    budget = truncated;
  }

  std::vector<std::string> initial = seeds.inputs;
  if (initial.empty()) initial.emplace_back();

  Rng rng(config.trial_seed);
  codegen::Executor executor(program);
  WeightedCorpus corpus(config.scheduling);
  for (const auto& s : initial) corpus.add(s, 0);

  CampaignLog log;
  log.unit_size = config.wall_clock_units ? 0 : config.unit_size;
  std::vector<bool> seen(program.num_elements(), false);
  std::vector<std::uint64_t> unit_stamp(program.num_elements(), 0);
  std::uint64_t unit_index = 1;  // stamp value for the open unit
  std::vector<ElementId> unit;

  const auto started = std::chrono::steady_clock::now();
  auto unit_started = started;
  auto close_unit = [&] {
    std::sort(unit.begin(), unit.end());
    log.unit_coverage.push_back(std::move(unit));
    log.discovery_curve.push_back(log.discovery_order.size());
    unit.clear();
    ++unit_index;
  };

  for (std::uint64_t i = 0; i < budget; ++i) {
    const bool is_seed = i < initial.size();
    std::string mutant;
    if (!is_seed) {
      mutant = mutate_input(corpus.pick(rng), config.policy, rng,
                            corpus.inputs(), config.dictionary);
    }
    const std::string& input = is_seed ? initial[i] : mutant;
    const auto& result = executor.run(input, config.step_budget);
    ++log.executions;
    if (result.verdict == codegen::Verdict::kAccept) ++log.accepted;
    if (result.budget_exhausted) ++log.budget_exhausted;

    std::size_t novelty = 0;
    for (ElementId id : result.covered) {
      if (unit_stamp[id] != unit_index) {
        unit_stamp[id] = unit_index;
        unit.push_back(id);
      }
      if (!seen[id]) {
        seen[id] = true;
        ++novelty;
        log.discovery_order.push_back(id);
        log.discovery_execution.push_back(i);
      }
    }
    if (novelty > 0 && !is_seed) corpus.add(input, novelty);

    if (config.wall_clock_units) {
      const auto now = std::chrono::steady_clock::now();
      if (std::chrono::duration<double>(now - unit_started).count() >=
          config.unit_seconds) {
        close_unit();
        unit_started = now;
      }
    } else if ((i + 1) % config.unit_size == 0) {
      close_unit();
    }
  }
  if (config.wall_clock_units && !unit.empty()) close_unit();

  log.corpus_size = corpus.size();
  log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              started)
                    .count();
  log.executions_per_second =
      log.seconds > 0.0 ? static_cast<double>(log.executions) / log.seconds : 0.0;
  return log;
}

std::vector<CampaignLog> run_trials(const codegen::ParserProgram& program,
                                    const SeedCorpus& corpus,
                                    const CampaignConfig& config,
                                    std::uint64_t master_seed,
                                    std::size_t trials, std::size_t threads) {
  config.validate();
  std::vector<CampaignLog> logs(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    CampaignConfig c = config;
    c.trial_seed = trial_seed(master_seed, k);
    logs[k] = run_campaign(program, corpus, c);
  });
  return logs;
}

Json to_json(const CampaignConfig& c) {
  Json j;
  j["trial_seed"] = c.trial_seed;
  j["budget"] = c.budget;
  j["unit_size"] = c.unit_size;
  j["policy"] = to_json(c.policy);
  j["scheduling"] = scheduling_name(c.scheduling);
  j["step_budget"] = c.step_budget;
  j["dictionary"] = c.dictionary;
  j["wall_clock_units"] = c.wall_clock_units;
  j["unit_seconds"] = c.unit_seconds;
  return j;
}

CampaignConfig campaign_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("campaign config must be an object");
  CampaignConfig c;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "trial_seed") {
        c.trial_seed = v.get<std::uint64_t>();
      } else if (key == "budget") {
        c.budget = v.get<std::uint64_t>();
      } else if (key == "unit_size") {
        c.unit_size = v.get<std::uint64_t>();
      } else if (key == "policy") {
        c.policy = mutation_policy_from_json(v);
      } else if (key == "scheduling") {
        const auto s = v.get<std::string>();
        if (s == "uniform") {
          c.scheduling = Scheduling::kUniform;
        } else if (s == "novelty") {
          c.scheduling = Scheduling::kNovelty;
        } else {
          throw ConfigError("unknown scheduling '" + s + "'");
        }
      } else if (key == "step_budget") {
        c.step_budget = v.get<std::uint64_t>();
      } else if (key == "dictionary") {
        c.dictionary = v.get<std::vector<std::uint8_t>>();
      } else if (key == "wall_clock_units") {
        c.wall_clock_units = v.get<bool>();
      } else if (key == "unit_seconds") {
        c.unit_seconds = v.get<double>();
      } else {
        throw ConfigError("unknown campaign key '" + key + "'");
      }
    } catch (const Json::exception& e) {
      throw ConfigError("campaign key '" + key + "': " + e.what());
    }
  }
  return c;
}

Json campaign_summary(const CampaignLog& log, const CampaignConfig& config) {
  Json j;
  j["units"] = log.units();
  j["unit_size"] = log.unit_size;
  j["executions"] = log.executions;
  j["discovered"] = log.discovered();
  j["accepted"] = log.accepted;
  j["budget_exhausted"] = log.budget_exhausted;
  j["corpus_size"] = log.corpus_size;
  j["seconds"] = log.seconds;
  j["executions_per_second"] = log.executions_per_second;
  j["config"] = to_json(config);
  return j;
}

}  // namespace reachbench::fuzzer
