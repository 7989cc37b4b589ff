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

#ifndef REACHBENCH_UTIL_SEED_H_
#define REACHBENCH_UTIL_SEED_H_

#include <cstdint>
#include <string_view>

namespace reachbench {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Deterministic sub-seed: mix(master, fnv1a(purpose), index). Every random
// stream in a pipeline is derived this way from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t index = 0);

}  // namespace reachbench

#endif  // REACHBENCH_UTIL_SEED_H_
