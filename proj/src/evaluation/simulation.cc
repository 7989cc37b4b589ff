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

#include "reachbench/evaluation/simulation.h"

#include <cmath>
#include <string>

#include "reachbench/util/error.h"
#include "reachbench/util/random.h"

namespace reachbench::evaluation {

void BernoulliProductModel::validate() const {
  if (pi.empty()) throw ConfigError("model: pi is empty");
  if (t == 0) throw ConfigError("model: t must be >= 1");
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!(pi[i] >= 0.0 && pi[i] <= 1.0)) {
      throw ConfigError("model: pi[" + std::to_string(i) + "] outside [0, 1]");
    }
  }
}

BernoulliProductModel BernoulliProductModel::homogeneous(std::size_t s, double p,
                                                         std::size_t t) {
  return {std::vector<double>(s, p), t};
}

double expected_observed(const BernoulliProductModel& model) {
  model.validate();
  double sum = 0;
  for (double p : model.pi) {
    sum += 1.0 - std::pow(1.0 - p, static_cast<double>(model.t));
  }
  return sum;
}

incidence::IncidenceMatrix simulate_incidence(const BernoulliProductModel& model,
                                              std::uint64_t seed) {
  model.validate();
  Rng rng(seed);
  std::vector<std::vector<incidence::ElementId>> units(model.t);
  for (auto& unit : units) {
    for (std::size_t i = 0; i < model.pi.size(); ++i) {
      if (rng.bernoulli(model.pi[i])) {
        unit.push_back(static_cast<incidence::ElementId>(i));
      }
    }
  }
  return incidence::IncidenceMatrix(units, 1);
}

}  // namespace reachbench::evaluation
