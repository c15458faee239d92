// Copyright 2026 The Moralmap Authors.
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

#ifndef MORALMAP_COMMON_ERROR_H_
#define MORALMAP_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace moralmap {

// Coarse classification used to map failures onto process exit codes.
enum class ErrorKind {
  kValidation,  // bad configuration or arguments
  kData,        // malformed or inconsistent input data
  kRuntime,     // environment failures (I/O, sockets)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorKind::kData, message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kRuntime, message) {}
};

}  // namespace moralmap

#endif  // MORALMAP_COMMON_ERROR_H_
