// Copyright 2026 The rebal Authors
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

#ifndef REBAL_ERROR_H
#define REBAL_ERROR_H

#include <stdexcept>
#include <string>

namespace rebal {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Sizes or indices that do not agree with the register width.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// Inputs that are well-formed but violate a documented precondition.
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// Malformed serialized data (calibration files, config files).
class ParseError : public Error {
   public:
    using Error::Error;
};

/// Singular or ill-conditioned matrices, degenerate unfolding support.
class NumericalError : public Error {
   public:
    using Error::Error;
};

/// Filesystem failures.
class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace rebal

#endif
