// Copyright 2026 The pblottery Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace pblottery {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input document or instance violates the schema or an instance invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The instance is not in the utility/cost setting an operation requires.
class SettingError : public Error {
 public:
  using Error::Error;
};

// An exhaustive check would exceed the configured enumeration caps.
class ScaleError : public Error {
 public:
  using Error::Error;
};

// A guarantee that the algorithms are proved to maintain was observed broken
// at runtime. Never clamped or repaired; always surfaced to the caller.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace pblottery
