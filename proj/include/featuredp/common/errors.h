// Copyright 2026 The FeatureDP Authors
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
#ifndef FEATUREDP_COMMON_ERRORS_H_
#define FEATUREDP_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fdp {

// Base class for every error raised by the library. The CLI maps
// subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical budget (truncation mass, bin count) exceeded.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPairError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Record or manifest does not match the declared schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NormViolationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SimulatorError : public Error {
 public:
  using Error::Error;
};

class AttackError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented input contract (e.g. unnormalized features).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Non-finite value produced during an iterative computation.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, long step)
      : Error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace fdp

#endif  // FEATUREDP_COMMON_ERRORS_H_
