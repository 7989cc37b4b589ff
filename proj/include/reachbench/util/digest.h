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

#ifndef REACHBENCH_UTIL_DIGEST_H_
#define REACHBENCH_UTIL_DIGEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace reachbench {

// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

// SHA-256 of a file's contents, or nullopt if it cannot be read.
std::optional<std::string> sha256_file(const std::filesystem::path& path);

// Whole-file helpers used by the persistence layers.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace reachbench

#endif  // REACHBENCH_UTIL_DIGEST_H_
