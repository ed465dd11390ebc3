// Copyright 2026 The matshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace matshare {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (dimension mismatch, invalid parameters,
// unknown recipient, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A matrix that had to be inverted has zero determinant.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A rejection-sampling loop ran out of attempts.
class GenerationFailure : public Error {
 public:
  using Error::Error;
};

// Reconstruction produced a value that honest participants cannot produce,
// e.g. a non-integer secret.
class IntegrityFailure : public Error {
 public:
  using Error::Error;
};

// Malformed JSON artifact.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace matshare
