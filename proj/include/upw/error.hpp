// Copyright 2026 The upw Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UPW_ERROR_HPP_
#define UPW_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace upw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  std::size_t line_;
  std::size_t column_;
};

// An operation was called outside its precondition (missing assignment,
// non-numeral parameter, arity mismatch, non-disjoint sets, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Coefficient growth exceeded the configured bit ceiling.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// A checked theorem-level property failed. Never expected; reported loudly.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace upw

#endif  // UPW_ERROR_HPP_
