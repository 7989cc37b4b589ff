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

#include "reachbench/evaluation/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "reachbench/evaluation/stats.h"
#include "reachbench/util/error.h"
#include "reachbench/util/parallel.h"
#include "reachbench/util/seed.h"

namespace reachbench::evaluation {

namespace {

using estimators::EstimateWithCI;
using estimators::Method;

struct Binned {
  BinningSummary summary;
  std::vector<double> points;
};

Binned summarize(const std::vector<EstimateWithCI>& per_trial,
                 std::size_t factor, std::size_t base_unit_size) {
  Binned out;
  out.summary.merge_factor = factor;
  out.summary.unit_size = base_unit_size * factor;
  double lows = 0, highs = 0;
  std::size_t with_ci = 0;
  for (const auto& e : per_trial) {
    if (e.failed()) {
      ++out.summary.failed;
      continue;
    }
    out.points.push_back(e.point);
    if (e.has_ci()) {
      lows += e.ci_low;
      highs += e.ci_high;
      ++with_ci;
    }
  }
  out.summary.evaluated = out.points.size();
  if (!out.points.empty()) {
    double sum = 0;
    for (double p : out.points) sum += p;
    out.summary.mean = sum / static_cast<double>(out.points.size());
  }
  if (with_ci > 0) {
    out.summary.mean_ci_low = lows / static_cast<double>(with_ci);
    out.summary.mean_ci_high = highs / static_cast<double>(with_ci);
  }
  return out;
}

bool contains(const BinningSummary& s, double x) {
  const double slack = 1e-9 * std::max(1.0, std::fabs(x));
  return s.mean_ci_low - slack <= x && x <= s.mean_ci_high + slack;
}

bool is_normal(const std::vector<double>& sample, double alpha) {
  if (sample.size() < 3) return false;
  try {
    return normality_check(sample).p_value >= alpha;
  } catch (const ValidationError&) {
    return false;  // constant sample
  }
}

SensitivityVerdict compare(Method method, const Binned& a, const Binned& b,
                           double alpha) {
  SensitivityVerdict v;
  v.method = method;
  v.a = a.summary;
  v.b = b.summary;
  const auto more_than_half_failed = [](const BinningSummary& s) {
    return 2 * s.failed > s.failed + s.evaluated;
  };
  v.inconclusive = more_than_half_failed(v.a) || more_than_half_failed(v.b) ||
                   a.points.empty() || b.points.empty();
  if (!v.inconclusive) {
    if (a.points.size() >= 2 && b.points.size() >= 2 &&
        is_normal(a.points, alpha) && is_normal(b.points, alpha)) {
      const auto w = welch_t_test(a.points, b.points);
      v.test = SignificanceTest::kWelch;
      v.statistic = w.statistic;
      v.p_value = w.p_value;
    } else {
      const auto mw = mann_whitney_u(a.points, b.points);
      v.test = SignificanceTest::kMannWhitney;
      v.statistic = mw.u;
      v.p_value = mw.p_value;
    }
  }
  v.ci_overlap = contains(v.b, v.a.mean) && contains(v.a, v.b.mean);
  v.intervals_intersect = v.a.mean_ci_low <= v.b.mean_ci_high &&
                          v.b.mean_ci_low <= v.a.mean_ci_high;
  v.reliable = !v.inconclusive && v.p_value >= alpha && v.ci_overlap;
  return v;
}

}  // namespace

std::string_view test_name(SignificanceTest test) {
  switch (test) {
    case SignificanceTest::kWelch:
      return "welch";
    case SignificanceTest::kMannWhitney:
      return "mann-whitney";
    case SignificanceTest::kNone:
      break;
  }
  return "none";
}

std::vector<SensitivityVerdict> sensitivity_analysis(
    const std::vector<incidence::IncidenceMatrix>& trials,
    const std::vector<std::size_t>& merge_factors,
    const SensitivityConfig& config) {
  if (trials.empty()) throw ConfigError("sensitivity: no trials");
  if (merge_factors.size() < 2) {
    throw ConfigError("sensitivity: needs at least two unit sizes");
  }
  for (auto m : merge_factors) {
    if (m == 0) throw ConfigError("sensitivity: merge factor must be >= 1");
  }
  for (const auto& trial : trials) {
    if (trial.units() != trials.front().units() ||
        trial.unit_size() != trials.front().unit_size()) {
      throw ConfigError("sensitivity: trials differ in unit count or size");
    }
  }
  const auto& methods =
      config.methods.empty() ? estimators::all_methods() : config.methods;
  const std::size_t base = trials.front().unit_size();

  // Each distinct factor is estimated once; [factor][trial][method].
  std::vector<std::size_t> distinct(merge_factors);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::vector<std::vector<EstimateWithCI>>> results(
      distinct.size(),
      std::vector<std::vector<EstimateWithCI>>(trials.size()));
  parallel_for(distinct.size() * trials.size(), config.threads,
               [&](std::size_t job) {
                 const std::size_t f = job / trials.size();
                 const std::size_t k = job % trials.size();
                 auto options = config.estimator;
                 options.bootstrap_seed = derive_seed(
                     config.estimator.bootstrap_seed, "sensitivity", k);
                 results[f][k] = estimators::estimate_all(
                     incidence::rebin(trials[k], distinct[f]), methods, options);
               });

  std::map<std::size_t, std::vector<Binned>> binned;  // factor -> per method
  for (std::size_t f = 0; f < distinct.size(); ++f) {
    auto& per_method = binned[distinct[f]];
    for (std::size_t q = 0; q < methods.size(); ++q) {
      std::vector<EstimateWithCI> column;
      for (const auto& trial : results[f]) column.push_back(trial[q]);
      per_method.push_back(summarize(column, distinct[f], base));
    }
  }

  std::vector<SensitivityVerdict> verdicts;
  for (std::size_t q = 0; q < methods.size(); ++q) {
    for (std::size_t i = 0; i < merge_factors.size(); ++i) {
      for (std::size_t j = i + 1; j < merge_factors.size(); ++j) {
        verdicts.push_back(compare(methods[q], binned[merge_factors[i]][q],
                                   binned[merge_factors[j]][q], config.alpha));
      }
    }
  }
  return verdicts;
}

std::vector<std::size_t> merge_factors(
    std::size_t base, const std::vector<std::size_t>& unit_sizes) {
  if (base == 0) throw ConfigError("sensitivity: base unit size unknown");
  std::vector<std::size_t> factors;
  for (auto r : unit_sizes) {
    if (r == 0 || r % base != 0) {
      throw ConfigError("unit size " + std::to_string(r) +
                        " is not a multiple of the base unit size " +
                        std::to_string(base));
    }
    factors.push_back(r / base);
  }
  return factors;
}

std::vector<SensitivityVerdict> sensitivity_analysis(
    const std::vector<fuzzer::CampaignLog>& logs,
    const std::vector<std::size_t>& unit_sizes, const SensitivityConfig& config) {
  if (logs.empty()) throw ConfigError("sensitivity: no trials");
  std::vector<incidence::IncidenceMatrix> trials;
  trials.reserve(logs.size());
  for (const auto& log : logs) {
    trials.push_back(incidence::build_incidence_matrix(log));
  }
  return sensitivity_analysis(
      trials, merge_factors(trials.front().unit_size(), unit_sizes), config);
}

}  // namespace reachbench::evaluation
