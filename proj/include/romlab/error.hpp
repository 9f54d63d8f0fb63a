// Copyright 2026 The romlab Authors.
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

#ifndef ROMLAB_ERROR_HPP_
#define ROMLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace romlab {

// Numeric values are shared with the C API status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kMalformed = 2,
  kState = 3,
  kCapacity = 4,
  kBudget = 5,
  kEvalFailure = 6,
  kConfig = 7,
  kIo = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace romlab

#endif  // ROMLAB_ERROR_HPP_
