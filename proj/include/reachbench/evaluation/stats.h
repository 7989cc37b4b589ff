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

#ifndef REACHBENCH_EVALUATION_STATS_H_
#define REACHBENCH_EVALUATION_STATS_H_

#include <span>

namespace reachbench::evaluation {

struct WelchResult {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

// Two-sided Welch test. Requires both samples of size >= 2 (ConfigError).
// When both variances are zero: equal means give t = 0, p = 1; otherwise
// t = +-inf, p = 0.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct NormalityResult {
  double statistic = 0;  // W
  double p_value = 1;
};

// Shapiro-Wilk (Royston's AS R94 approximation). Requires 3 <= n; a sample
// with zero range throws ValidationError.
NormalityResult normality_check(std::span<const double> sample);

struct MannWhitneyResult {
  double u = 0;  // U of the first sample
  double p_value = 1;
  bool exact = false;
};

// Two-sided Mann-Whitney U. Exact null distribution when both samples have
// at most kExactLimit values and there are no ties; otherwise the normal
// approximation with tie and continuity correction. Requires nonempty
// samples (ConfigError).
inline constexpr std::size_t kMannWhitneyExactLimit = 20;
MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b);

}  // namespace reachbench::evaluation

#endif  // REACHBENCH_EVALUATION_STATS_H_
