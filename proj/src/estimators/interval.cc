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

#include <algorithm>
#include <cmath>

#include "reachbench/estimators/estimators.h"
#include "reachbench/util/random.h"
#include "reachbench/util/seed.h"

namespace reachbench::estimators {
namespace {

constexpr double kReplicateEmTolerance = 1e-8;

// Counts of the matrix whose columns are `picks` of the original columns.
FrequencyCounts resample_counts(const std::vector<std::vector<std::uint32_t>>& cols,
                                std::size_t n_elements,
                                const std::vector<std::size_t>& picks,
                                std::vector<std::uint32_t>& y) {
  y.assign(n_elements, 0);
  for (auto j : picks) {
    for (auto i : cols[j]) ++y[i];
  }
  FrequencyCounts c;
  c.t = picks.size();
  c.f.assign(c.t + 1, 0);
  for (auto v : y) {
    if (v == 0) continue;
    ++c.f[v];
    ++c.s_obs;
    c.y.push_back(v);
  }
  c.unit_singletons.assign(c.t, 0);
  c.unit_min_y.assign(c.t, 0);
  for (std::size_t b = 0; b < picks.size(); ++b) {
    for (auto i : cols[picks[b]]) {
      const auto v = y[i];
      if (v == 1) ++c.unit_singletons[b];
      if (c.unit_min_y[b] == 0 || v < c.unit_min_y[b]) c.unit_min_y[b] = v;
    }
  }
  return c;
}

// Linear interpolation between order statistics.
double quantile_sorted(const std::vector<double>& v, double q) {
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

Interval bootstrap_interval(const IncidenceMatrix& matrix, Method method,
                            double point, const EstimatorOptions& options) {
  Interval out;
  if (!(options.level > 0.0)) {
    out.low = out.high = point;
    out.method = "point";
    return out;
  }
  const std::size_t t = matrix.units();
  if (t == 0 || options.bootstrap_replicates == 0) return out;
  std::vector<std::vector<std::uint32_t>> cols(t);
  for (std::size_t i = 0; i < matrix.num_elements(); ++i) {
    for (auto j : matrix.row(i)) cols[j].push_back(static_cast<std::uint32_t>(i));
  }
  EstimatorOptions inner = options;
  inner.analytic_ci = false;
  // Replicate refits use a single start and a looser tolerance.
  inner.em.restarts = 0;
  inner.em.tolerance = std::max(options.em.tolerance, kReplicateEmTolerance);
  Rng rng(derive_seed(options.bootstrap_seed, "bootstrap"));
  std::vector<std::size_t> picks(t);
  std::vector<std::uint32_t> y;
  std::vector<double> values;
  values.reserve(options.bootstrap_replicates);
  for (std::size_t b = 0; b < options.bootstrap_replicates; ++b) {
    for (auto& p : picks) p = rng.index(t);
    const FrequencyCounts c = resample_counts(cols, matrix.num_elements(), picks, y);
    const EstimateWithCI e = estimate_point(c, method, inner);
    if (!e.failed() && std::isfinite(e.point)) values.push_back(e.point);
  }
  out.replicates_used = values.size();
  if (values.empty()) return out;
  out.method = "bootstrap";
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double variance = 0;
  for (double v : values) variance += (v - mean) * (v - mean);
  if (values.size() > 1) variance /= static_cast<double>(values.size() - 1);
  const auto log_ci = log_transform_interval(
      static_cast<double>(matrix.num_elements()), point, variance, options.level);
  if (log_ci) {
    out.method = "bootstrap-log";
    out.low = std::min(log_ci->first, point);
    out.high = std::max(log_ci->second, point);
    return out;
  }
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) {
    out.low = out.high = point;
    return out;
  }
  out.low = std::min(quantile_sorted(values, 0.5 - options.level / 2.0), point);
  out.high = std::max(quantile_sorted(values, 0.5 + options.level / 2.0), point);
  return out;
}

Interval confidence_interval(const IncidenceMatrix& matrix, Method method,
                             const EstimatorOptions& options) {
  const EstimateWithCI e = estimate(matrix, method, options);
  Interval out;
  out.low = e.ci_low;
  out.high = e.ci_high;
  out.method = e.ci_method;
  return out;
}

EstimateWithCI estimate(const IncidenceMatrix& matrix, Method method,
                        const EstimatorOptions& options) {
  const FrequencyCounts counts = incidence::frequency_counts(matrix);
  EstimateWithCI e = estimate_point(counts, method, options);
  if (e.failed()) return e;
  if (!(options.level > 0.0)) {
    e.ci_low = e.ci_high = e.point;
    e.ci_method = "point";
    return e;
  }
  if (!e.has_ci()) {
    const Interval ci = bootstrap_interval(matrix, method, e.point, options);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    e.ci_method = ci.method;
    e.diagnostics.emplace_back("bootstrap_replicates_used",
                               static_cast<double>(ci.replicates_used));
  }
  if (e.has_ci()) {
    e.ci_low = std::min(e.ci_low, e.point);
    e.ci_high = std::max(e.ci_high, e.point);
  }
  return e;
}

std::vector<EstimateWithCI> estimate_all(const IncidenceMatrix& matrix,
                                         const std::vector<Method>& methods,
                                         const EstimatorOptions& options) {
  std::vector<EstimateWithCI> out;
  out.reserve(methods.size());
  for (Method m : methods) out.push_back(estimate(matrix, m, options));
  return out;
}

}  // namespace reachbench::estimators
