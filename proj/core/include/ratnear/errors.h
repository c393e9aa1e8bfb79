// Copyright 2026 The ratnear Authors
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

#ifndef RATNEAR_ERRORS_H_
#define RATNEAR_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ratnear {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Thrown when an enumeration would exceed the configured point budget.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// ||A q^T|| vanished exactly for some nonzero q.
class RationalDependenceError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class CertificateError : public Error {
 public:
  using Error::Error;
};

class SeparationError : public Error {
 public:
  SeparationError(const std::string& what, std::int64_t r, std::int64_t s)
      : Error(what), r_(r), s_(s) {}
  std::int64_t r() const { return r_; }
  std::int64_t s() const { return s_; }

 private:
  std::int64_t r_;
  std::int64_t s_;
};

}  // namespace ratnear

#endif  // RATNEAR_ERRORS_H_
