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

#include "reachbench/util/json.h"

#include "reachbench/util/error.h"

namespace reachbench {

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string(what) + ": malformed JSON", line, column);
  }
}

std::string dump_json(const Json& value) { return value.dump(2) + "\n"; }

const Json& require(const Json& object, std::string_view key,
                    std::string_view what) {
  if (!object.is_object()) {
    throw ParseError(std::string(what) + ": expected an object");
  }
  auto it = object.find(std::string(key));
  if (it == object.end()) {
    throw ParseError(std::string(what) + ": missing key \"" +
                     std::string(key) + "\"");
  }
  return *it;
}

}  // namespace reachbench
