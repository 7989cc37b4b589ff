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

#ifndef REACHBENCH_UTIL_JSON_H_
#define REACHBENCH_UTIL_JSON_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace reachbench {

using Json = nlohmann::ordered_json;

// Parses `text`, mapping syntax errors to ParseError with line and column.
Json parse_json(std::string_view text, std::string_view what);

// Canonical text: two-space indent plus trailing newline.
std::string dump_json(const Json& value);

// Typed member access that throws ParseError naming `what` and `key`.
const Json& require(const Json& object, std::string_view key,
                    std::string_view what);

}  // namespace reachbench

#endif  // REACHBENCH_UTIL_JSON_H_
