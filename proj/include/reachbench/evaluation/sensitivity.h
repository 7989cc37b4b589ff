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

#ifndef REACHBENCH_EVALUATION_SENSITIVITY_H_
#define REACHBENCH_EVALUATION_SENSITIVITY_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "reachbench/estimators/estimators.h"
#include "reachbench/fuzzer/campaign.h"

namespace reachbench::evaluation {

enum class SignificanceTest : std::uint8_t { kWelch, kMannWhitney, kNone };
std::string_view test_name(SignificanceTest test);

struct SensitivityConfig {
  std::vector<estimators::Method> methods;  // empty = all
  double alpha = 0.05;
  estimators::EstimatorOptions estimator;
  std::size_t threads = 1;
};

struct BinningSummary {
  std::size_t merge_factor = 1;
  std::size_t unit_size = 0;  // merge_factor * base unit size; 0 if unknown
  double mean = estimators::kNaN;
  double mean_ci_low = estimators::kNaN;
  double mean_ci_high = estimators::kNaN;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
};

struct SensitivityVerdict {
  estimators::Method method = estimators::Method::kChao2;
  BinningSummary a;
  BinningSummary b;
  SignificanceTest test = SignificanceTest::kNone;
  double statistic = estimators::kNaN;
  double p_value = estimators::kNaN;
  // Each mean estimate lies inside the other binning's mean interval.
  bool ci_overlap = false;
  // The two mean intervals intersect.
  bool intervals_intersect = false;
  bool reliable = false;
  // More than half of the trials failed under a binning.
  bool inconclusive = false;
};

// Rebins every trial by each merge factor and compares each estimator across
// every pair of factors (i < j). Trials must share t and unit size. Throws
// ConfigError on fewer than two factors, a zero factor, or no trials.
std::vector<SensitivityVerdict> sensitivity_analysis(
    const std::vector<incidence::IncidenceMatrix>& trials,
    const std::vector<std::size_t>& merge_factors,
    const SensitivityConfig& config);

// Same, from campaign logs and absolute unit sizes, each a multiple of the
// logs' unit size.
std::vector<SensitivityVerdict> sensitivity_analysis(
    const std::vector<fuzzer::CampaignLog>& logs,
    const std::vector<std::size_t>& unit_sizes, const SensitivityConfig& config);

// Converts absolute unit sizes to merge factors over `base`.
std::vector<std::size_t> merge_factors(std::size_t base,
                                       const std::vector<std::size_t>& unit_sizes);

}  // namespace reachbench::evaluation

#endif  // REACHBENCH_EVALUATION_SENSITIVITY_H_
