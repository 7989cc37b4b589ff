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

#ifndef REACHBENCH_TESTS_SUPPORT_FIXTURES_H_
#define REACHBENCH_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "reachbench/incidence/incidence.h"
#include "reachbench/util/json.h"

namespace reachbench::testing {

std::filesystem::path fixture_path(const std::string& name);
// Parses a checked-in JSON fixture; throws when it is missing.
Json load_fixture(const std::string& name);

// Counts from a {"k": f_k} object.
incidence::FrequencyCounts counts_from_json(std::size_t t, const Json& f);

// Independent Bernoulli draws W_ij ~ Bernoulli(pi_i) with std distributions,
// kept separate from the library's simulator.
incidence::IncidenceMatrix bernoulli_matrix(const std::vector<double>& pi,
                                            std::size_t t, std::uint64_t seed);

}  // namespace reachbench::testing

#endif  // REACHBENCH_TESTS_SUPPORT_FIXTURES_H_
