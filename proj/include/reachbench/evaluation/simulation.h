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

#ifndef REACHBENCH_EVALUATION_SIMULATION_H_
#define REACHBENCH_EVALUATION_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "reachbench/incidence/incidence.h"

namespace reachbench::evaluation {

// Independent Bernoulli detections: element i appears in each of t units
// with probability pi[i]. The pi need not sum to one.
struct BernoulliProductModel {
  std::vector<double> pi;
  std::size_t t = 0;

  std::size_t richness() const { return pi.size(); }
  // Throws ConfigError unless pi is nonempty with entries in [0, 1] and t >= 1.
  void validate() const;

  static BernoulliProductModel homogeneous(std::size_t s, double p,
                                           std::size_t t);
};

// E[S_obs] = sum_i 1 - (1 - pi_i)^t.
double expected_observed(const BernoulliProductModel& model);

// Draws W_ij ~ Bernoulli(pi_i). Element ids are the indices into pi; never
// detected elements have no row. unit_size is recorded as 1.
incidence::IncidenceMatrix simulate_incidence(const BernoulliProductModel& model,
                                              std::uint64_t seed);

}  // namespace reachbench::evaluation

#endif  // REACHBENCH_EVALUATION_SIMULATION_H_
