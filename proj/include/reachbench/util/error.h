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

#ifndef REACHBENCH_UTIL_ERROR_H_
#define REACHBENCH_UTIL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reachbench {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural invariant of an input object does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A configuration is well-formed but cannot be satisfied.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Two inputs that must describe the same object disagree.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed external file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::size_t column = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) +
                              (column == 0 ? std::string()
                                           : ", column " + std::to_string(column)) +
                              ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace reachbench

#endif  // REACHBENCH_UTIL_ERROR_H_
