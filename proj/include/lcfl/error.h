// Copyright 2026 The LCFL Authors
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

#ifndef LCFL_ERROR_H_
#define LCFL_ERROR_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lcfl {

enum class ErrorCode {
  kSize,         // block size or plane dimension mismatch
  kArgument,     // bad argument value
  kUnavailable,  // no neighbor context for prediction
  kContract,     // precondition on a value's state violated
  kDecode,       // malformed or truncated stream
  kIo,           // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by every stream parser. `position` is the byte offset at which the
// problem was detected, when known.
class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what,
                       std::optional<uint64_t> position = std::nullopt)
      : Error(ErrorCode::kDecode, Describe(what, position)),
        position_(position) {}

  std::optional<uint64_t> position() const { return position_; }

 private:
  static std::string Describe(const std::string& what,
                              std::optional<uint64_t> position) {
    if (!position) return what;
    return what + " (at byte " + std::to_string(*position) + ")";
  }

  std::optional<uint64_t> position_;
};

}  // namespace lcfl

#endif  // LCFL_ERROR_H_
