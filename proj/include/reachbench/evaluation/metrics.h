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

#ifndef REACHBENCH_EVALUATION_METRICS_H_
#define REACHBENCH_EVALUATION_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>

#include "reachbench/estimators/estimators.h"

namespace reachbench::evaluation {

struct TrialResult {
  std::size_t trial = 1;  // 1-based
  estimators::Method method = estimators::Method::kChao2;
  std::size_t t = 0;
  double point = estimators::kNaN;
  double ci_low = estimators::kNaN;
  double ci_high = estimators::kNaN;
  estimators::Status status = estimators::Status::kFailed;
  std::optional<double> true_s;

  bool failed() const { return status == estimators::Status::kFailed; }

  static TrialResult from_estimate(std::size_t trial, std::size_t t,
                                   const estimators::EstimateWithCI& e,
                                   std::optional<double> true_s = {});
};

// sum_i (S_i - S) / (K S) over the non-failed results. Throws ConfigError when
// there are none or S <= 0.
double mean_bias(std::span<const TrialResult> results, double s);

// Sample variance (n - 1) of the relative biases of the non-failed results.
// Throws ConfigError when fewer than two remain.
double imprecision(std::span<const TrialResult> results, double s);

struct Coverage {
  double proportion = estimators::kNaN;  // NaN when nothing was evaluated
  std::size_t covered = 0;
  std::size_t evaluated = 0;
  std::size_t failed = 0;  // failed status or no interval
};

Coverage ci_coverage(std::span<const TrialResult> results, double s);

std::size_t count_failed(std::span<const TrialResult> results);

}  // namespace reachbench::evaluation

#endif  // REACHBENCH_EVALUATION_METRICS_H_
