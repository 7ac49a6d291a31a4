// Copyright 2026 The hsplit Authors.
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

namespace hsplit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ManifoldMismatch : public Error {
 public:
  using Error::Error;
};

/// A tangent vector was combined with a point that is not its base.
class BaseMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A vector field returned no value, or a non-finite one, at a queried point.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An inner solver hit its iteration cap before reaching its tolerance.
class NonconvergenceError : public Error {
 public:
  NonconvergenceError(const std::string& what, double last_residual, int iterations)
      : Error(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

class ScheduleViolation : public Error {
 public:
  ScheduleViolation(const std::string& what, long index) : Error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// A spot check of a declared structural property (convexity, subgradient
/// inequality) found a counterexample; what() describes the witness.
class RegistrationRefused : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

}  // namespace hsplit
