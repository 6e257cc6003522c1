// Copyright 2026 The Anonmine Authors
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

#ifndef ANONMINE_ERRORS_H_
#define ANONMINE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace anonmine {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class InputError : public Error {
 public:
  using Error::Error;
};

// File contents do not follow the expected schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Geometry that cannot be expressed in slope/intercept form.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

// An iterative solver failed to meet its convergence contract.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace anonmine

#endif  // ANONMINE_ERRORS_H_
