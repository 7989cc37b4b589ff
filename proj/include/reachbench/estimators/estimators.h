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

#ifndef REACHBENCH_ESTIMATORS_ESTIMATORS_H_
#define REACHBENCH_ESTIMATORS_ESTIMATORS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reachbench/incidence/incidence.h"

namespace reachbench::estimators {

using incidence::FrequencyCounts;
using incidence::IncidenceMatrix;

enum class Method : std::uint8_t {
  kChao2,
  kChao2Bc,
  kIChao2,
  kJk1,
  kJk2,
  kIce,
  kIce1,
  kZelterman,
  kBootstrap,
  kChaoBunge,
  kUnpmle,
  kPnpmle,
};

const std::vector<Method>& all_methods();
std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);
// "all" or a comma-separated list of names. Throws ConfigError.
std::vector<Method> parse_method_list(std::string_view list);

enum class Status : std::uint8_t { kOk, kDegenerateFallback, kFailed };
std::string_view status_name(Status status);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EstimateWithCI {
  Method method = Method::kChao2;
  double point = kNaN;
  double ci_low = kNaN;
  double ci_high = kNaN;
  Status status = Status::kFailed;
  // "log-transform", "bootstrap", "point" or "none".
  std::string ci_method = "none";
  std::string message;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool failed() const { return status == Status::kFailed; }
  bool has_ci() const { return ci_low == ci_low && ci_high == ci_high; }
  double diagnostic(std::string_view key) const;
};

struct EmConfig {
  int max_support = 10;
  double tolerance = 1e-10;  // relative change of the objective
  int max_iterations = 20000;
  int restarts = 3;
};

struct EstimatorOptions {
  double level = 0.90;
  std::size_t bootstrap_replicates = 500;
  std::uint64_t bootstrap_seed = 1;
  std::uint32_t ice_cutoff = 10;
  // Count units holding an infrequent element instead of using t.
  bool ice_exact_t_star = false;
  EmConfig em;
  // Log-transform intervals for Chao2, Chao2_bc and JK1 when defined.
  bool analytic_ci = true;
};

enum class Chao2Variant : std::uint8_t { kClassic, kBiasCorrected, kImproved };
enum class IceVariant : std::uint8_t { kIce, kIce1 };

// Point estimators. Each needs t >= 2 (iChao2 t >= 4) and returns a failed
// status instead of throwing. Chao2, Chao2_bc and JK1 also carry their
// log-transform interval when the variance is defined.
EstimateWithCI chao2_family(const FrequencyCounts& counts, Chao2Variant variant,
                            const EstimatorOptions& options = {});
EstimateWithCI jackknife(const FrequencyCounts& counts, int order,
                         const EstimatorOptions& options = {});
EstimateWithCI ice_family(const FrequencyCounts& counts, IceVariant variant,
                          const EstimatorOptions& options = {});
EstimateWithCI zelterman(const FrequencyCounts& counts);
EstimateWithCI bootstrap_estimator(const FrequencyCounts& counts);
EstimateWithCI chao_bunge(const FrequencyCounts& counts);
EstimateWithCI npmle(const FrequencyCounts& counts, bool penalized,
                     const EmConfig& em = {});

EstimateWithCI estimate_point(const FrequencyCounts& counts, Method method,
                              const EstimatorOptions& options = {});

// Log-transform interval S_obs + T / K, S_obs + T * K with
// K = exp(z sqrt(log(1 + var / T^2))) and T = point - S_obs. Nullopt when
// T <= 0 or var is not positive.
std::optional<std::pair<double, double>> log_transform_interval(
    double s_obs, double point, double variance, double level);

struct Interval {
  double low = kNaN;
  double high = kNaN;
  std::string method = "none";
  std::size_t replicates_used = 0;
};

// Percentile interval over B resamples of the unit columns.
Interval bootstrap_interval(const IncidenceMatrix& matrix, Method method,
                            double point, const EstimatorOptions& options);

// Analytic interval where available, bootstrap otherwise.
Interval confidence_interval(const IncidenceMatrix& matrix, Method method,
                             const EstimatorOptions& options = {});

// Point estimate plus interval; the interval always contains the point.
EstimateWithCI estimate(const IncidenceMatrix& matrix, Method method,
                        const EstimatorOptions& options = {});
std::vector<EstimateWithCI> estimate_all(const IncidenceMatrix& matrix,
                                         const std::vector<Method>& methods,
                                         const EstimatorOptions& options = {});

}  // namespace reachbench::estimators

#endif  // REACHBENCH_ESTIMATORS_ESTIMATORS_H_
