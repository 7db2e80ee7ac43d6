// Copyright 2026 The pim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIM_ERROR_HPP
#define PIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pim {

// Numeric values double as CLI exit codes.
enum class ErrorCode : int {
  verification = 1,
  parse = 2,
  domain = 3,
  solver = 4,
  not_invertible = 5,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Malformed input files or JSON payloads.
class ParseError : public Error {
public:
  explicit ParseError(const std::string &what)
      : Error(ErrorCode::parse, what) {}
};

// Input violates a mathematical precondition (shape, Hermiticity, HPTP, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string &what)
      : Error(ErrorCode::domain, what) {}
};

class DimensionError : public DomainError {
public:
  explicit DimensionError(const std::string &what) : DomainError(what) {}
};

class SolverError : public Error {
public:
  explicit SolverError(const std::string &what)
      : Error(ErrorCode::solver, what) {}
};

class NotInvertibleError : public Error {
public:
  explicit NotInvertibleError(const std::string &what)
      : Error(ErrorCode::not_invertible, what) {}
};

} // namespace pim

#endif
