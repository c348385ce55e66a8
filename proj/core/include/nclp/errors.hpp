// Copyright 2026 The nclp Authors
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

#ifndef NCLP_ERRORS_HPP_
#define NCLP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nclp {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live on different algebras, or blocks do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of an operation (non-Hermitian,
// non-PSD, negative scale, alpha == 1, zero functional, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition relating several inputs does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Result could not be certified: a recomposition residual exceeded its bound
// or a reference functional is too close to singular.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// File or document content that cannot be turned into a valid object.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Unrecognized suite name, bad flag value, and similar caller mistakes.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace nclp

#endif  // NCLP_ERRORS_HPP_
