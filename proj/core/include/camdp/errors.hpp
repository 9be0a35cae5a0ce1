// Copyright 2026 The camdp Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace camdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index or tensor shape does not match the model dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its mathematical domain (e.g. gamma >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// Markov chain lacks a structural property (irreducibility, aperiodicity).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Model failed validation; carries the rendered violation list.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// An iteration loop failed to stabilize. `partial` holds the sub-policies
/// visited before giving up, in order.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what,
                      std::vector<std::vector<int>> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<std::vector<int>>& partial() const { return partial_; }

 private:
  std::vector<std::vector<int>> partial_;
};

}  // namespace camdp
