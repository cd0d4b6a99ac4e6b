// Copyright 2026 The shapdb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHAPDB_ERRORS_H_
#define SHAPDB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapdb {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent user input (bad file, unknown fact, ...).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// A text format could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& message)
      : InputError(Format(source, line, message)), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& source, std::size_t line,
                            const std::string& message) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
  }

  std::size_t line_;
};

// An exhaustive procedure was asked to run on an instance above its guard.
class TooLargeError : public Error {
 public:
  explicit TooLargeError(const std::string& what) : Error(what) {}
};

// An operation's structural precondition does not hold (e.g. a circuit that
// is not decomposable was handed to the stratified counter).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// The knowledge compiler hit its node budget.
class BudgetExhaustedError : public Error {
 public:
  explicit BudgetExhaustedError(const std::string& what) : Error(what) {}
};

// A cooperative deadline expired.
class TimeoutError : public Error {
 public:
  explicit TimeoutError(const std::string& what) : Error(what) {}
};

// An internal cross-check failed; signals a bug or a broken input contract.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(what) {}
};

}  // namespace shapdb

#endif  // SHAPDB_ERRORS_H_
