// Copyright 2026 The mrref Authors.
//
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

#ifndef MRREF_ERRORS_H_
#define MRREF_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrref {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed annotation, lexicon, config or trace text. Carries the 1-based
// line number of the offending record (0 when not tied to a line).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string &message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data invariant (duplicate ids,
// overlapping cells, hyperonym cycles, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A key partition that does not cover the document's REs.
class CoverageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Invalid parameters or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The operation does not apply to its operands (e.g. partitioning an MR
// without a collective lexicon entry).
class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace mrref

#endif  // MRREF_ERRORS_H_
