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

#include "reachbench/evaluation/metrics.h"

#include <algorithm>

#include "reachbench/util/error.h"

namespace reachbench::evaluation {

namespace {

// Point estimates of the non-failed results. Bias and imprecision are computed
// on the points and scaled by s once at the end.
std::vector<double> usable_points(std::span<const TrialResult> results,
                                  double s) {
  if (!(s > 0)) throw ConfigError("true richness must be positive");
  std::vector<double> points;
  for (const auto& r : results) {
    if (!r.failed()) points.push_back(r.point);
  }
  return points;
}

}  // namespace

TrialResult TrialResult::from_estimate(std::size_t trial, std::size_t t,
                                       const estimators::EstimateWithCI& e,
                                       std::optional<double> true_s) {
  TrialResult r;
  r.trial = trial;
  r.method = e.method;
  r.t = t;
  r.point = e.point;
  r.ci_low = e.ci_low;
  r.ci_high = e.ci_high;
  r.status = e.status;
  r.true_s = true_s;
  return r;
}

double mean_bias(std::span<const TrialResult> results, double s) {
  const auto points = usable_points(results, s);
  if (points.empty()) throw ConfigError("mean_bias: no usable results");
  double sum = 0;
  for (double p : points) sum += p;
  return (sum / static_cast<double>(points.size()) - s) / s;
}

double imprecision(std::span<const TrialResult> results, double s) {
  const auto points = usable_points(results, s);
  if (points.size() < 2) {
    throw ConfigError("imprecision: needs at least two usable results");
  }
  // Shifted by the first value, so identical estimates give exactly zero.
  const double n = static_cast<double>(points.size());
  double sum = 0, sum2 = 0;
  for (double p : points) {
    const double d = p - points.front();
    sum += d;
    sum2 += d * d;
  }
  return std::max(0.0, (sum2 - sum * sum / n) / (n - 1)) / (s * s);
}

Coverage ci_coverage(std::span<const TrialResult> results, double s) {
  Coverage c;
  for (const auto& r : results) {
    if (r.failed() || !(r.ci_low == r.ci_low) || !(r.ci_high == r.ci_high)) {
      ++c.failed;
      continue;
    }
    ++c.evaluated;
    if (r.ci_low <= s && s <= r.ci_high) ++c.covered;
  }
  if (c.evaluated > 0) {
    c.proportion =
        static_cast<double>(c.covered) / static_cast<double>(c.evaluated);
  }
  return c;
}

std::size_t count_failed(std::span<const TrialResult> results) {
  std::size_t n = 0;
  for (const auto& r : results) n += r.failed() ? 1 : 0;
  return n;
}

}  // namespace reachbench::evaluation
