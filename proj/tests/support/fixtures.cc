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

#include "support/fixtures.h"

#include <random>

#include "reachbench/util/digest.h"

namespace reachbench::testing {

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(REACHBENCH_FIXTURE_DIR) / name;
}

Json load_fixture(const std::string& name) {
  const auto path = fixture_path(name);
  return parse_json(read_file(path), path.string());
}

incidence::FrequencyCounts counts_from_json(std::size_t t, const Json& f) {
  std::vector<std::uint64_t> fk(t, 0);
  for (const auto& [k, v] : f.items()) {
    fk.at(std::stoul(k) - 1) = v.get<std::uint64_t>();
  }
  return incidence::FrequencyCounts::from_frequencies(t, fk);
}

incidence::IncidenceMatrix bernoulli_matrix(const std::vector<double>& pi,
                                            std::size_t t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<incidence::ElementId>> units(t);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t i = 0; i < pi.size(); ++i) {
      if (u(rng) < pi[i]) units[j].push_back(static_cast<incidence::ElementId>(i));
    }
  }
  return incidence::IncidenceMatrix(units);
}

}  // namespace reachbench::testing
